#include "exphull/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "exphull/errors.hpp"

namespace exphull {

LaurentPoly LaurentPoly::constant(std::vector<std::string> vars, const Rational& c) {
    LaurentPoly p(std::move(vars));
    if (c != 0) p.terms_[ExpVec(p.vars_.size(), 0)] = c;
    return p;
}

LaurentPoly LaurentPoly::variable(std::vector<std::string> vars, int index, long exponent) {
    LaurentPoly p(std::move(vars));
    ExpVec e(p.vars_.size(), 0);
    e.at(index) = exponent;
    p.terms_[e] = Rational(1);
    return p;
}

LaurentPoly LaurentPoly::monomial(std::vector<std::string> vars, const ExpVec& e, const Rational& c) {
    LaurentPoly p(std::move(vars));
    if (e.size() != p.vars_.size()) throw DomainError("monomial exponent length mismatch");
    if (c != 0) p.terms_[e] = c;
    return p;
}

bool LaurentPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const ExpVec& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
}

Rational LaurentPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw DomainError("constant_value of non-constant polynomial");
    return terms_.begin()->second;
}

void LaurentPoly::add_term(const ExpVec& e, const Rational& c) {
    if (e.size() != vars_.size()) throw DomainError("term exponent length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (vars_ != o.vars_) throw DomainError("polynomial ring mismatch");
    LaurentPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    if (vars_ != o.vars_) throw DomainError("polynomial ring mismatch");
    LaurentPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (vars_ != o.vars_) throw DomainError("polynomial ring mismatch");
    LaurentPoly out(vars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            ExpVec e(e1.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

LaurentPoly LaurentPoly::scale(const Rational& c) const {
    LaurentPoly out(vars_);
    if (c == 0) return out;
    for (const auto& [e, k] : terms_) out.terms_[e] = k * c;
    return out;
}

LaurentPoly LaurentPoly::pow(long e) const {
    if (e < 0) {
        if (!is_single_term()) throw DomainError("negative power of non-unit polynomial");
        const auto& [m, c] = *terms_.begin();
        ExpVec me(m.size());
        for (size_t i = 0; i < m.size(); ++i) me[i] = m[i] * e;
        return monomial(vars_, me, rational_pow(c, e));
    }
    LaurentPoly out = constant(vars_, Rational(1));
    LaurentPoly base = *this;
    long n = e;
    while (n) {
        if (n & 1) out = out * base;
        base = (n >>= 1) ? base * base : base;
    }
    return out;
}

long LaurentPoly::min_exponent(int var) const {
    long m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (first || e[var] < m) m = e[var];
        first = false;
    }
    return m;
}

long LaurentPoly::max_exponent(int var) const {
    long m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (first || e[var] > m) m = e[var];
        first = false;
    }
    return m;
}

long LaurentPoly::total_degree() const {
    long d = 0;
    for (const auto& [e, c] : terms_) {
        (void)c;
        long t = 0;
        for (long x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

bool LaurentPoly::depends_on(int var) const {
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (e[var] != 0) return true;
    }
    return false;
}

LaurentPoly LaurentPoly::shift(const ExpVec& s) const {
    if (s.size() != vars_.size()) throw DomainError("shift exponent length mismatch");
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        ExpVec ne(e.size());
        for (size_t i = 0; i < e.size(); ++i) ne[i] = e[i] + s[i];
        out.terms_[ne] = c;
    }
    return out;
}

bool LaurentPoly::is_polynomial() const {
    for (const auto& [e, c] : terms_) {
        (void)c;
        for (long x : e)
            if (x < 0) return false;
    }
    return true;
}

LaurentPoly LaurentPoly::substitute(const std::vector<std::optional<LaurentPoly>>& values,
                                    const std::vector<std::string>& target_vars) const {
    if (values.size() != vars_.size()) throw DomainError("substitution arity mismatch");
    // identity images for untouched variables
    std::vector<LaurentPoly> image(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (values[i]) {
            if (values[i]->vars() != target_vars) throw DomainError("substitution ring mismatch");
            image[i] = *values[i];
        } else {
            auto it = std::find(target_vars.begin(), target_vars.end(), vars_[i]);
            if (it == target_vars.end())
                throw DomainError("substitute: variable " + vars_[i] + " missing from target ring");
            image[i] = LaurentPoly::variable(target_vars, static_cast<int>(it - target_vars.begin()));
        }
    }
    LaurentPoly out(target_vars);
    for (const auto& [e, c] : terms_) {
        LaurentPoly term = LaurentPoly::constant(target_vars, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            term = term * image[i].pow(e[i]);
        }
        out = out + term;
    }
    return out;
}

LaurentPoly LaurentPoly::align_to(const std::vector<std::string>& target_vars) const {
    std::vector<int> where(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(target_vars.begin(), target_vars.end(), vars_[i]);
        if (it == target_vars.end())
            throw DomainError("align_to: variable " + vars_[i] + " missing from target ring");
        where[i] = static_cast<int>(it - target_vars.begin());
    }
    LaurentPoly out(target_vars);
    for (const auto& [e, c] : terms_) {
        ExpVec ne(target_vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
        out.add_term(ne, c);
    }
    return out;
}

LaurentPoly LaurentPoly::stretch_var(int var, long m) const {
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        ExpVec ne = e;
        ne[var] *= m;
        out.terms_[ne] = c;
    }
    return out;
}

LaurentPoly LaurentPoly::normalized() const {
    if (terms_.empty()) return *this;
    const Rational& lead = terms_.rbegin()->second;
    return scale(Rational(1) / lead);
}

LaurentPoly LaurentPoly::derivative(int var) const {
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExpVec ne = e;
        ne[var] -= 1;
        out.add_term(ne, c * Rational(e[var]));
    }
    return out;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& d) const {
    if (vars_ != d.vars()) throw DomainError("polynomial ring mismatch");
    if (d.is_zero()) return std::nullopt;
    // long division by the lex-leading term of d; exact or bust
    LaurentPoly rem = *this;
    LaurentPoly quot(vars_);
    const auto dlead = *d.terms().rbegin();
    // exact division terminates; inexact Laurent division descends forever,
    // so cap the number of quotient terms
    for (long steps = 0; !rem.is_zero(); ++steps) {
        if (steps > 4096) return std::nullopt;
        const auto rlead = *rem.terms().rbegin();
        ExpVec q(rlead.first.size());
        for (size_t i = 0; i < q.size(); ++i) q[i] = rlead.first[i] - dlead.first[i];
        LaurentPoly qmono = monomial(vars_, q, rlead.second / dlead.second);
        quot = quot + qmono;
        rem = rem - qmono * d;
    }
    return quot;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest lex term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        } else if (a < 0) {
            os << "-";
            a = -a;
        }
        first = false;
        bool any_var = std::any_of(e.begin(), e.end(), [](long x) { return x != 0; });
        if (!any_var || a != 1) {
            os << a.get_str();
            if (any_var) os << "*";
        }
        bool started = false;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (started) os << "*";
            started = true;
            os << vars_[i];
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

} // namespace exphull
