#pragma once

#include <cstdint>
#include <string>

namespace mbqc {

/// Default irrational multiple of pi used as the third basis angle:
/// pi * (sqrt(5) - 1) / 2.
double default_alpha0();

/// Measurement angle alpha = (num/den) * pi + alpha_count * alpha0, where
/// alpha0 is a fixed irrational multiple of pi. The rational part is kept
/// reduced and canonicalized into [0, 2pi); the alpha0 part is symbolic so
/// Pauli angles are recognized exactly.
struct Angle {
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::int64_t alpha_count = 0;

    Angle() = default;
    Angle(std::int64_t n, std::int64_t d, std::int64_t a0 = 0);

    static Angle zero() { return Angle(); }
    static Angle pi() { return Angle(1, 1); }
    static Angle rational(std::int64_t n, std::int64_t d) { return Angle(n, d); }
    static Angle irrational(std::int64_t count) { return Angle(0, 1, count); }

    /// Numeric value in radians, in [0, 2pi) when alpha_count == 0.
    double value(double alpha0 = default_alpha0()) const;

    Angle negated() const;
    Angle plus_pi() const;
    Angle plus(const Angle& other) const;

    bool is_zero() const { return num == 0 && alpha_count == 0; }
    /// Multiple of pi/2 with no irrational part.
    bool is_pauli() const;
    /// Multiple of pi (angle 0 or pi).
    bool is_real_axis() const;

    bool operator==(const Angle& other) const = default;

  private:
    void canonicalize();
};

} // namespace mbqc
