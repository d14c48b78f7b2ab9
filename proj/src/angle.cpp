#include "mbqc/angle.hpp"

#include "mbqc/ids.hpp"

#include <cmath>
#include <numeric>

namespace mbqc {

double default_alpha0() {
    static const double value = M_PI * (std::sqrt(5.0) - 1.0) / 2.0;
    return value;
}

Angle::Angle(std::int64_t n, std::int64_t d, std::int64_t a0) : num(n), den(d), alpha_count(a0) {
    if (den == 0) throw Error("angle denominator must be nonzero");
    canonicalize();
}

void Angle::canonicalize() {
    if (den < 0) {
        den = -den;
        num = -num;
    }
    // Reduce the rational multiple of pi modulo 2pi, i.e. num/den modulo 2.
    num %= 2 * den;
    if (num < 0) num += 2 * den;
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
}

double Angle::value(double alpha0) const {
    return M_PI * static_cast<double>(num) / static_cast<double>(den) +
           static_cast<double>(alpha_count) * alpha0;
}

Angle Angle::negated() const { return Angle(-num, den, -alpha_count); }

Angle Angle::plus_pi() const { return Angle(num + den, den, alpha_count); }

Angle Angle::plus(const Angle& other) const {
    return Angle(num * other.den + other.num * den, den * other.den, alpha_count + other.alpha_count);
}

bool Angle::is_pauli() const {
    if (alpha_count != 0) return false;
    return den == 1 || (den == 2 && (num % 2) != 0);
}

bool Angle::is_real_axis() const { return alpha_count == 0 && den == 1; }

} // namespace mbqc
