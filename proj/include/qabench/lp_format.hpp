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

#ifndef QABENCH_LP_FORMAT_HPP_INCLUDED
#define QABENCH_LP_FORMAT_HPP_INCLUDED

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qabench/instance_io.hpp"
#include "qabench/ising.hpp"
#include "qabench/trace.hpp"

namespace qabench {

// Writing ------------------------------------------------------------------

inline std::string lp_var(Site i) { return "x_" + std::to_string(i); }
inline std::string lp_lifted_var(Site i, Site j) {
    return "y_" + std::to_string(i) + "_" + std::to_string(j);
}

namespace detail {

/// Accumulates "+ c name" terms, wrapping lines so they stay short.
class LpLine {
  public:
    explicit LpLine(std::ostringstream& out) : out_(out) {}

    void term(double coefficient, const std::string& body) {
        wrap();
        out_ << (coefficient < 0 ? " - " : " + ") << format_double(std::abs(coefficient));
        if (!body.empty()) out_ << ' ' << body;
        ++terms_;
    }

    void raw(const std::string& text) {
        wrap();
        out_ << ' ' << text;
        ++terms_;
    }

  private:
    void wrap() {
        if (terms_ > 0 && terms_ % 8 == 0) out_ << "\n  ";
    }

    std::ostringstream& out_;
    std::size_t terms_ = 0;
};

inline void write_binaries(std::ostringstream& out, const std::vector<std::string>& names) {
    out << "Binary\n";
    for (std::size_t k = 0; k < names.size(); ++k) {
        out << (k % 10 == 0 ? " " : " ") << names[k];
        if (k % 10 == 9 || k + 1 == names.size()) out << '\n';
    }
}

}  // namespace detail

/**
 * CPLEX-LP text for  min sum c_ij x_i x_j + sum c_i x_i + c  over binary x.
 * Zero coefficients are omitted; every x_i is still declared binary.
 */
inline std::string iqp_lp_text(const QuboModel& qubo) {
    std::ostringstream out;
    out << "\\ QUBO with " << qubo.n << " binary variables\n";
    out << "Minimize\n obj:";
    detail::LpLine line(out);
    bool any = false;
    for (const auto& l : qubo.lin) {
        if (l.value == 0.0) continue;
        line.term(l.value, lp_var(l.i));
        any = true;
    }
    bool bracket = false;
    for (const auto& q : qubo.quad) {
        if (q.value == 0.0) continue;
        if (!bracket) {
            line.raw(any ? "+ [" : "[");
            bracket = true;
        }
        line.term(2.0 * q.value, lp_var(q.i) + " * " + lp_var(q.j));
        any = true;
    }
    if (bracket) line.raw("] / 2");
    if (qubo.offset != 0.0 || !any) line.term(qubo.offset, "");
    out << "\nSubject To\n";
    std::vector<std::string> names;
    for (Site i = 0; i < qubo.n; ++i) names.push_back(lp_var(i));
    detail::write_binaries(out, names);
    out << "End\n";
    return out.str();
}

/**
 * Linearised form: each product x_i x_j becomes y_i_j with
 *   x_i + x_j - y_i_j <= 1,  y_i_j - x_i <= 0,  y_i_j - x_j <= 0.
 */
inline std::string ilp_lp_text(const QuboModel& qubo) {
    std::ostringstream out;
    out << "\\ Linearised QUBO with " << qubo.n << " binary variables\n";
    out << "Minimize\n obj:";
    detail::LpLine line(out);
    bool any = false;
    for (const auto& l : qubo.lin) {
        if (l.value == 0.0) continue;
        line.term(l.value, lp_var(l.i));
        any = true;
    }
    std::vector<const Coupling*> products;
    // Every edge is lifted, including zero ones, so the variable set follows the edge set.
    for (const auto& q : qubo.quad) {
        products.push_back(&q);
        if (q.value == 0.0) continue;
        line.term(q.value, lp_lifted_var(q.i, q.j));
        any = true;
    }
    if (qubo.offset != 0.0 || !any) line.term(qubo.offset, "");
    out << "\nSubject To\n";
    for (const auto* q : products) {
        const auto xi = lp_var(q->i), xj = lp_var(q->j), y = lp_lifted_var(q->i, q->j);
        const auto tag = std::to_string(q->i) + "_" + std::to_string(q->j);
        out << " and_" << tag << "_lo: " << xi << " + " << xj << " - " << y << " <= 1\n";
        out << " and_" << tag << "_i: " << y << " - " << xi << " <= 0\n";
        out << " and_" << tag << "_j: " << y << " - " << xj << " <= 0\n";
    }
    std::vector<std::string> names;
    for (Site i = 0; i < qubo.n; ++i) names.push_back(lp_var(i));
    for (const auto* q : products) names.push_back(lp_lifted_var(q->i, q->j));
    detail::write_binaries(out, names);
    out << "End\n";
    return out.str();
}

inline void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

inline void export_iqp(const QuboModel& qubo, const std::filesystem::path& path) {
    write_text(iqp_lp_text(qubo), path);
}

inline void export_ilp(const QuboModel& qubo, const std::filesystem::path& path) {
    write_text(ilp_lp_text(qubo), path);
}

// Reading ------------------------------------------------------------------

enum class Sense { LessEqual, GreaterEqual, Equal };

struct LpConstraint {
    std::string name;
    std::map<std::string, double> terms;
    Sense sense;
    double rhs;
};

struct QuadTerm {
    std::string a;
    std::string b;
    double coefficient;
};

/// Subset of the LP text format: one objective, linear constraints, binaries.
struct LpProgram {
    bool minimize = true;
    std::map<std::string, double> linear;
    std::vector<QuadTerm> quadratic;
    double constant = 0.0;
    std::vector<LpConstraint> constraints;
    std::vector<std::string> binaries;

    using Point = std::unordered_map<std::string, double>;

    double objective(const Point& point) const {
        double value = constant;
        for (const auto& [name, c] : linear) value += c * at(point, name);
        for (const auto& q : quadratic) value += q.coefficient * at(point, q.a) * at(point, q.b);
        return value;
    }

    bool feasible(const Point& point, double tolerance = 1e-9) const {
        for (const auto& con : constraints) {
            double lhs = 0.0;
            for (const auto& [name, c] : con.terms) lhs += c * at(point, name);
            switch (con.sense) {
                case Sense::LessEqual:
                    if (lhs > con.rhs + tolerance) return false;
                    break;
                case Sense::GreaterEqual:
                    if (lhs < con.rhs - tolerance) return false;
                    break;
                case Sense::Equal:
                    if (std::abs(lhs - con.rhs) > tolerance) return false;
                    break;
            }
        }
        return true;
    }

  private:
    static double at(const Point& point, const std::string& name) {
        auto it = point.find(name);
        if (it == point.end()) throw InputError("point has no value for " + name);
        return it->second;
    }
};

namespace detail {

struct LpToken {
    enum Kind { Word, Number, Symbol } kind;
    std::string text;
    std::size_t line;
};

inline std::vector<LpToken> lp_tokens(std::string_view text) {
    std::vector<LpToken> out;
    std::size_t line = 1;
    std::size_t i = 0;
    auto word_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '#' || c == '$' ||
               c == '@' || c == '!' || c == '"' || c == '{' || c == '}' || c == '~' || c == '\'' || c == '&';
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '\\') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::size_t j = i;
            while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    j = k;
                    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                }
            }
            out.push_back({LpToken::Number, std::string(text.substr(i, j - i)), line});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && word_char(text[j])) ++j;
            out.push_back({LpToken::Word, std::string(text.substr(i, j - i)), line});
            i = j;
        } else if ((c == '<' || c == '>' || c == '=') && i + 1 < text.size() &&
                   (text[i + 1] == '=' || text[i + 1] == '<' || text[i + 1] == '>')) {
            out.push_back({LpToken::Symbol, std::string(text.substr(i, 2)), line});
            i += 2;
        } else {
            out.push_back({LpToken::Symbol, std::string(1, c), line});
            ++i;
        }
    }
    return out;
}

inline std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

class LpParser {
  public:
    LpParser(std::vector<LpToken> tokens, std::string source) : tokens_(std::move(tokens)), source_(std::move(source)) {}

    LpProgram parse() {
        LpProgram program;
        const auto head = lower(expect_word().text);
        if (head == "minimize" || head == "minimise" || head == "min") {
            program.minimize = true;
        } else if (head == "maximize" || head == "maximise" || head == "max") {
            program.minimize = false;
        } else {
            fail("expected Minimize or Maximize");
        }
        skip_label();
        parse_expression(program.linear, &program.quadratic, &program.constant);

        while (!done()) {
            const auto section = section_keyword();
            if (section == "subject to") {
                while (!done() && !at_section()) program.constraints.push_back(parse_constraint());
            } else if (section == "binary") {
                while (!done() && !at_section()) program.binaries.push_back(expect_word().text);
            } else if (section == "end") {
                break;
            } else {
                fail("unsupported section \"" + section + "\"");
            }
        }
        return program;
    }

  private:
    bool done() const { return pos_ >= tokens_.size(); }
    const LpToken& peek(std::size_t ahead = 0) const {
        static const LpToken eof{LpToken::Symbol, "", 0};
        return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : eof;
    }

    [[noreturn]] void fail(const std::string& what) const {
        const auto line = done() ? (tokens_.empty() ? 0 : tokens_.back().line) : peek().line;
        throw ParseError(source_ + ":" + std::to_string(line) + ": " + what);
    }

    const LpToken& expect_word() {
        if (done() || peek().kind != LpToken::Word) fail("expected a name");
        return tokens_[pos_++];
    }

    void expect_symbol(const std::string& s) {
        if (done() || peek().text != s) fail("expected '" + s + "'");
        ++pos_;
    }

    /// Returns the normalised section name at the cursor, or "" when none.
    std::string peek_section(std::size_t* width) const {
        if (done() || peek().kind != LpToken::Word) return "";
        const auto w = lower(peek().text);
        if (w == "subject" && lower(peek(1).text) == "to") {
            *width = 2;
            return "subject to";
        }
        if (w == "st" || w == "s.t.") {
            *width = 1;
            return "subject to";
        }
        if (w == "such" && lower(peek(1).text) == "that") {
            *width = 2;
            return "subject to";
        }
        *width = 1;
        if (w == "binary" || w == "binaries" || w == "bin") return "binary";
        if (w == "end") return "end";
        if (w == "bounds" || w == "bound" || w == "general" || w == "generals" || w == "gen") return w;
        return "";
    }

    bool at_section() const {
        std::size_t width = 0;
        return !peek_section(&width).empty();
    }

    std::string section_keyword() {
        std::size_t width = 0;
        auto s = peek_section(&width);
        if (s.empty()) fail("expected a section keyword");
        pos_ += width;
        return s;
    }

    void skip_label() {
        if (peek().kind == LpToken::Word && peek(1).text == ":") pos_ += 2;
    }

    double number() {
        if (done() || peek().kind != LpToken::Number) fail("expected a number");
        return std::stod(tokens_[pos_++].text);
    }

    bool expression_ends() const {
        if (done()) return true;
        const auto& t = peek();
        if (t.kind == LpToken::Symbol &&
            (t.text == "<=" || t.text == ">=" || t.text == "=<" || t.text == "=>" || t.text == "=" ||
             t.text == "<" || t.text == ">"))
            return true;
        if (at_section()) return true;
        return false;
    }

    /// One signed term: [sign] [number] [name [* name | ^ 2]].
    void parse_expression(std::map<std::string, double>& linear, std::vector<QuadTerm>* quadratic,
                          double* constant) {
        bool first = true;
        while (!expression_ends()) {
            double sign = 1.0;
            if (peek().text == "+" || peek().text == "-") {
                sign = peek().text == "-" ? -1.0 : 1.0;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            first = false;
            if (peek().text == "[") {
                if (!quadratic) fail("quadratic terms are only supported in the objective");
                ++pos_;
                parse_bracket(*quadratic, sign);
                continue;
            }
            double coefficient = 1.0;
            bool has_number = false;
            if (peek().kind == LpToken::Number) {
                coefficient = number();
                has_number = true;
            }
            if (peek().kind == LpToken::Word && !at_section()) {
                linear[expect_word().text] += sign * coefficient;
            } else if (has_number) {
                if (!constant) fail("constant terms are only supported in the objective");
                *constant += sign * coefficient;
            } else {
                fail("expected a term");
            }
        }
    }

    void parse_bracket(std::vector<QuadTerm>& quadratic, double outer_sign) {
        std::vector<QuadTerm> inside;
        bool first = true;
        while (peek().text != "]") {
            if (done()) fail("unterminated '['");
            double sign = 1.0;
            if (peek().text == "+" || peek().text == "-") {
                sign = peek().text == "-" ? -1.0 : 1.0;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-' inside brackets");
            }
            first = false;
            double coefficient = 1.0;
            if (peek().kind == LpToken::Number) coefficient = number();
            const auto a = expect_word().text;
            std::string b;
            if (peek().text == "*") {
                ++pos_;
                b = expect_word().text;
            } else if (peek().text == "^") {
                ++pos_;
                if (number() != 2.0) fail("only squares are supported");
                b = a;
            } else {
                fail("expected '*' or '^' in a quadratic term");
            }
            inside.push_back({a, b, sign * coefficient});
        }
        ++pos_;
        double scale = 1.0;
        if (peek().text == "/") {
            ++pos_;
            scale = 1.0 / number();
        }
        for (auto& q : inside) {
            q.coefficient *= outer_sign * scale;
            quadratic.push_back(std::move(q));
        }
    }

    LpConstraint parse_constraint() {
        LpConstraint con;
        if (peek().kind == LpToken::Word && peek(1).text == ":") {
            con.name = peek().text;
            pos_ += 2;
        }
        parse_expression(con.terms, nullptr, nullptr);
        if (done()) fail("constraint without a sense");
        const auto op = tokens_[pos_++].text;
        if (op == "<=" || op == "=<" || op == "<")
            con.sense = Sense::LessEqual;
        else if (op == ">=" || op == "=>" || op == ">")
            con.sense = Sense::GreaterEqual;
        else if (op == "=")
            con.sense = Sense::Equal;
        else
            fail("expected a constraint sense");
        double sign = 1.0;
        if (peek().text == "-" || peek().text == "+") {
            sign = peek().text == "-" ? -1.0 : 1.0;
            ++pos_;
        }
        con.rhs = sign * number();
        return con;
    }

    std::vector<LpToken> tokens_;
    std::string source_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline LpProgram parse_lp(std::string_view text, std::string source = "lp") {
    return detail::LpParser(detail::lp_tokens(text), std::move(source)).parse();
}

}  // namespace qabench

#endif  // QABENCH_LP_FORMAT_HPP_INCLUDED
