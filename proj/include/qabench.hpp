// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#ifndef QABENCH_QABENCH_HPP_INCLUDED
#define QABENCH_QABENCH_HPP_INCLUDED

#include "qabench/annealing.hpp"
#include "qabench/ensemble.hpp"
#include "qabench/exact.hpp"
#include "qabench/harness.hpp"
#include "qabench/instance_gen.hpp"
#include "qabench/instance_io.hpp"
#include "qabench/ising.hpp"
#include "qabench/local_search.hpp"
#include "qabench/lp_format.hpp"
#include "qabench/metrics.hpp"
#include "qabench/min_sum.hpp"
#include "qabench/pegasus.hpp"
#include "qabench/pt_icm.hpp"
#include "qabench/pt_ladder.hpp"
#include "qabench/random.hpp"
#include "qabench/solvers.hpp"
#include "qabench/svmc.hpp"
#include "qabench/trace.hpp"

#endif  // QABENCH_QABENCH_HPP_INCLUDED
