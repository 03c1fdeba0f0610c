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

#ifndef QABENCH_PT_LADDER_HPP_INCLUDED
#define QABENCH_PT_LADDER_HPP_INCLUDED

#include <array>
#include <vector>

#include "qabench/pt_icm.hpp"

namespace qabench {

/// Output of tune_betas on cbfm-p_m16_s1 (tuner seed 1), frozen.
inline constexpr std::array<double, kReplicaCount> kTunedBetas = {
    0.10000000000000001, 0.1102090477621791, 0.12062174704277998, 0.13082471991716005,
    0.14139182445461818, 0.1516984999082151, 0.16222638197258521, 0.17247100303008872,
    0.18236817890734669, 0.19234969458437876, 0.20239113731863459, 0.21249038073867332,
    0.2224693370595982, 0.23249778291572934, 0.24283937998852378, 0.25255947890868852,
    0.26259031437186325, 0.27274883785910531, 0.28323727788460845, 0.29352189764114789,
    0.30380199564612553, 0.31430023242434429, 0.32531641605308009, 0.33645096442052147,
    0.34797488030583523, 0.36030535291084237, 0.37239126706008224, 0.38582603087971201,
    0.39966607791651193, 0.41415639921836922, 0.42974338697635917, 0.44612816982357884,
    0.4634484270264122, 0.4819220057533572, 0.50212780838884064, 0.52356743412412798,
    0.5464645954631886, 0.57096366163225731, 0.59790314141422396, 0.62667862707693156,
    0.65822682877466021, 0.69207743012352263, 0.7293866890028885, 0.77098153438748462,
    0.81751697081586205, 0.87008126224626559, 0.9283327362309638, 0.99329945088771776,
    1.067916424695472, 1.1506884102714512, 1.2503932397292123, 1.3672508107566546,
    1.5036012329802269, 1.6726597764904068, 1.8867581236083146, 2.1698816800302625,
    2.5763130806306975, 3.1798499792433348, 4.1246371709373122, 5.2530899850382795,
    6.2785900986456067, 7.0852400208512085, 7.6128885432261066, 8,
};

inline std::vector<double> tuned_betas() { return {kTunedBetas.begin(), kTunedBetas.end()}; }

}  // namespace qabench

#endif  // QABENCH_PT_LADDER_HPP_INCLUDED
