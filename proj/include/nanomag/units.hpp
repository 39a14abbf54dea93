#pragma once

// Physical constants and the small set of unit conversions used throughout
// the library. Internally everything is SI: fields in A/m, lengths in m,
// angular frequencies in rad/s. Conversions to the reporting units (T, nm,
// GHz, MHz, us, mm^3) live here so that no other module hard-codes them.

#include <numbers>

namespace nanomag {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Immutable bundle of the physical constants used by the library.
///
/// The gyromagnetic ratio is stored in rad/(s*T) and treated as a positive
/// quantity (the electron sign is absorbed into the precession sense).
class Constants {
public:
    static constexpr double kDefaultGammaOver2piHzPerT = 28.0e9;

    constexpr Constants() = default;

    /// Same constants with a different gyromagnetic ratio, given as gamma/(2 pi) in Hz/T.
    static Constants with_gamma_over_2pi(double hz_per_tesla);

    constexpr double mu0() const { return mu0_; }
    constexpr double muB() const { return muB_; }
    constexpr double hbar() const { return hbar_; }
    constexpr double c_light() const { return c_light_; }
    constexpr double gamma() const { return gamma_; }
    constexpr double gamma_over_2pi() const { return gamma_ / kTwoPi; }

private:
    double mu0_ = 4.0e-7 * kPi;         // T*m/A
    double muB_ = 9.2740100783e-24;     // J/T
    double hbar_ = 1.054571817e-34;     // J*s
    double c_light_ = 299792458.0;      // m/s
    double gamma_ = kTwoPi * kDefaultGammaOver2piHzPerT; // rad/(s*T)
};

inline constexpr Constants kConstants{};

// Field conversions. mu0*H in tesla <-> H in A/m. Non-finite input throws std::domain_error.
double tesla_to_field(double mu0H_tesla);
double field_to_tesla(double H);

namespace units {

inline constexpr double kNano = 1.0e-9;
inline constexpr double kMicro = 1.0e-6;
inline constexpr double kCubicMetreToCubicMillimetre = 1.0e9;

constexpr double nm_to_m(double nm) { return nm * kNano; }
constexpr double m_to_nm(double m) { return m / kNano; }
constexpr double s_to_us(double s) { return s / kMicro; }
constexpr double us_to_s(double us) { return us * kMicro; }
constexpr double m3_to_mm3(double v) { return v * kCubicMetreToCubicMillimetre; }

// omega (rad/s) <-> ordinary frequency in GHz / MHz / kHz / Hz
constexpr double omega_to_GHz(double omega) { return omega / kTwoPi / 1.0e9; }
constexpr double omega_to_MHz(double omega) { return omega / kTwoPi / 1.0e6; }
constexpr double omega_to_kHz(double omega) { return omega / kTwoPi / 1.0e3; }
constexpr double omega_to_Hz(double omega) { return omega / kTwoPi; }
constexpr double GHz_to_omega(double f) { return f * 1.0e9 * kTwoPi; }
constexpr double MHz_to_omega(double f) { return f * 1.0e6 * kTwoPi; }

} // namespace units

} // namespace nanomag
