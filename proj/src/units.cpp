#include "nanomag/units.hpp"

#include <cmath>
#include <stdexcept>

#include "nanomag/errors.hpp"

namespace nanomag {

Constants Constants::with_gamma_over_2pi(double hz_per_tesla)
{
    if (!(hz_per_tesla > 0.0) || !std::isfinite(hz_per_tesla))
        throw std::domain_error("gyromagnetic ratio must be positive and finite");
    Constants c;
    c.gamma_ = kTwoPi * hz_per_tesla;
    return c;
}

double tesla_to_field(double mu0H_tesla)
{
    if (!std::isfinite(mu0H_tesla))
        throw std::domain_error("tesla_to_field: non-finite induction");
    return mu0H_tesla / kConstants.mu0();
}

double field_to_tesla(double H)
{
    if (!std::isfinite(H))
        throw std::domain_error("field_to_tesla: non-finite field");
    return H * kConstants.mu0();
}

} // namespace nanomag
