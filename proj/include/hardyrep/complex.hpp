#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace hardyrep {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e^{-2πi·p} for a phase p given in turns.
Complex unit_phase(double turns);

// e^{-2πi·num/den} with num reduced modulo den in exact integer arithmetic.
Complex unit_phase(__int128 num, __int128 den);

// Parses "a", "bi", "a+bi", "a-bi" (decimal or scientific, optional signs, bare "i").
Complex parse_complex(std::string_view text);

// Round-trippable "a+bi" rendering.
std::string format_complex(Complex z);

std::string format_real(double x);

} // namespace hardyrep
