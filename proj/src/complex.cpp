#include "hardyrep/complex.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "hardyrep/error.hpp"

namespace hardyrep {

Complex unit_phase(double turns) {
    const double t = turns - std::floor(turns);
    return {std::cos(kTwoPi * t), -std::sin(kTwoPi * t)};
}

Complex unit_phase(__int128 num, __int128 den) {
    __int128 r = num % den;
    if (r < 0) r += den;
    // Quarter turns are returned exactly so that cancelling factors vanish exactly.
    if (r == 0) return {1.0, 0.0};
    if (2 * r == den) return {-1.0, 0.0};
    if (4 * r == den) return {0.0, -1.0};
    if (4 * r == 3 * den) return {0.0, 1.0};
    return unit_phase(static_cast<double>(static_cast<long double>(r) / static_cast<long double>(den)));
}

namespace {

double parse_real(std::string_view s, std::string_view whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ValidationError("malformed complex literal '" + std::string(whole) + "'");
    return v;
}

double parse_imag(std::string_view s, std::string_view whole) {
    // s excludes the trailing 'i'
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, whole);
}

} // namespace

Complex parse_complex(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ValidationError("empty complex literal");
    if (text.back() != 'i') return {parse_real(text, text), 0.0};

    const std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) return {0.0, parse_imag(body, text)};
    return {parse_real(body.substr(0, split), text), parse_imag(body.substr(split), text)};
}

std::string format_real(double x) {
    if (x == 0.0) return "0"; // folds −0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(Complex z) {
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    std::string out = format_real(z.real());
    out += std::signbit(im) ? "-" : "+";
    out += format_real(std::abs(im));
    out += "i";
    return out;
}

} // namespace hardyrep
