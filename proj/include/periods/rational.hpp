#ifndef PERIODS_RATIONAL_HPP
#define PERIODS_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace periods {

// Exact rational arithmetic for valuations and norm exponents.
// Denominators stay bounded by the ramification index, so long long is ample.
using Rat = boost::rational<long long>;

inline long long rat_floor(const Rat& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

inline long long rat_ceil(const Rat& r) { return -rat_floor(-r); }

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

// Size of a p-adic quantity as p^exponent, with an exact zero.
// Used for sup norms, tail bounds and distribution bound constants.
class Magnitude {
public:
    Magnitude() : zero_(true), exp_(0) {}
    static Magnitude zero() { return Magnitude(); }
    static Magnitude pow_p(const Rat& e) {
        Magnitude m;
        m.zero_ = false;
        m.exp_ = e;
        return m;
    }
    static Magnitude one() { return pow_p(Rat(0)); }

    bool is_zero() const { return zero_; }
    const Rat& exponent() const { return exp_; }

    friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
        if (a.zero_ || b.zero_) return zero();
        return pow_p(a.exp_ + b.exp_);
    }
    friend bool operator<(const Magnitude& a, const Magnitude& b) {
        if (a.zero_) return !b.zero_;
        if (b.zero_) return false;
        return a.exp_ < b.exp_;
    }
    friend bool operator<=(const Magnitude& a, const Magnitude& b) { return !(b < a); }
    friend bool operator==(const Magnitude& a, const Magnitude& b) {
        if (a.zero_ != b.zero_) return false;
        return a.zero_ || a.exp_ == b.exp_;
    }

    static Magnitude max(const Magnitude& a, const Magnitude& b) { return a < b ? b : a; }

    std::string to_string() const;

private:
    bool zero_;
    Rat exp_;
};

}  // namespace periods

#endif
