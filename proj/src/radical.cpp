#include "exphull/radical.hpp"

#include <sstream>

#include "exphull/errors.hpp"

namespace exphull {

namespace {

void factor_into(std::map<Integer, Rational>& exps, Integer n, int direction) {
    if (n < 0) throw DomainError("factor_into expects positive input");
    auto add = [&](const Integer& p) {
        exps[p] += direction;
        if (exps[p] == 0) exps.erase(p);
    };
    Integer d(2);
    while (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 25) != 0) {
            add(n);
            return;
        }
        while (n % d != 0) {
            d += (d == 2) ? 1 : 2;
            if (d > 1000000) throw ResourceLimitError("factorization budget exceeded");
        }
        add(d);
        n /= d;
    }
}

} // namespace

RadicalValue RadicalValue::from_rational(const Rational& q) {
    if (q == 0) throw DomainError("radical of zero");
    RadicalValue r;
    r.sign_ = q < 0 ? -1 : 1;
    Integer num = q.get_num();
    if (num < 0) num = -num;
    factor_into(r.exps_, num, +1);
    factor_into(r.exps_, Integer(q.get_den()), -1);
    return r;
}

RadicalValue RadicalValue::mul(const RadicalValue& o) const {
    RadicalValue r = *this;
    r.sign_ *= o.sign_;
    for (const auto& [p, e] : o.exps_) {
        r.exps_[p] += e;
        if (r.exps_[p] == 0) r.exps_.erase(p);
    }
    return r;
}

RadicalValue RadicalValue::pow(const Rational& e) const {
    RadicalValue r;
    if (sign_ < 0) {
        if (!is_integer(e))
            throw DomainError("fractional power of a negative value has no principal branch here");
        r.sign_ = mpz_odd_p(e.get_num().get_mpz_t()) ? -1 : 1;
    }
    if (e == 0) return r;
    for (const auto& [p, exp] : exps_) {
        Rational ne = exp * e;
        if (ne != 0) r.exps_[p] = ne;
    }
    return r;
}

bool RadicalValue::is_rational() const {
    for (const auto& [p, e] : exps_) {
        (void)p;
        if (!is_integer(e)) return false;
    }
    return true;
}

Rational RadicalValue::rational_value() const {
    if (!is_rational()) throw DomainError("radical is irrational");
    Rational v(sign_);
    for (const auto& [p, e] : exps_) v *= rational_pow(Rational(p), e.get_num().get_si());
    return v;
}

Rational RadicalValue::rational_part() const {
    Rational v(sign_);
    for (const auto& [p, e] : exps_) {
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), e.get_num().get_mpz_t(), e.get_den().get_mpz_t());
        v *= rational_pow(Rational(p), fl.get_si());
    }
    return v;
}

std::string RadicalValue::fractional_key() const {
    std::ostringstream os;
    for (const auto& [p, e] : exps_) {
        Rational frac = e - Rational(Integer([&] {
                            Integer fl;
                            mpz_fdiv_q(fl.get_mpz_t(), e.get_num().get_mpz_t(),
                                       e.get_den().get_mpz_t());
                            return fl;
                        }()));
        if (frac != 0) os << p.get_str() << "^" << frac.get_str() << ";";
    }
    return os.str();
}

bool RadicalValue::operator<(const RadicalValue& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    return exps_ < o.exps_;
}

std::string RadicalValue::to_string() const {
    if (exps_.empty()) return sign_ > 0 ? "1" : "-1";
    if (is_rational()) return rational_value().get_str();
    std::ostringstream os;
    if (sign_ < 0) os << "-";
    bool first = true;
    for (const auto& [p, e] : exps_) {
        if (!first) os << "*";
        first = false;
        os << p.get_str() << "^(" << e.get_str() << ")";
    }
    return os.str();
}

} // namespace exphull
