#pragma once

#include <array>
#include <string>

namespace bgw {

/// Parameters (a, b1, b2, theta) of the bivariate generalized Weibull law.
/// Validated at construction: a, b1, b2 > 0 and 0 < theta <= 1.
class BgwParams {
public:
    BgwParams(double a, double b1, double b2, double theta);

    double a() const { return a_; }
    double b1() const { return b1_; }
    double b2() const { return b2_; }
    double theta() const { return theta_; }

    /// Z(x, y) = b1 x^a + b2 y^a
    double z(double x, double y) const;

    std::array<double, 4> as_array() const { return {a_, b1_, b2_, theta_}; }
    static BgwParams from_array(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

    /// True when (a, b1, b2, theta) is inside the parameter space.
    static bool admissible(double a, double b1, double b2, double theta);

    std::string to_string() const;

    friend bool operator==(const BgwParams&, const BgwParams&) = default;

private:
    double a_, b1_, b2_, theta_;
};

/// Exponentiated Weibull marginal: F(t) = (1 - exp(-b t^a))^theta.
class EwParams {
public:
    EwParams(double a, double b, double theta);

    double a() const { return a_; }
    double b() const { return b_; }
    double theta() const { return theta_; }

    friend bool operator==(const EwParams&, const EwParams&) = default;

private:
    double a_, b_, theta_;
};

}  // namespace bgw
