#include "lsa/money.hpp"

#include <cstdio>
#include <stdexcept>

namespace lsa {

std::string format_ratio(std::int64_t numerator, std::int64_t denominator, int decimals) {
    if (denominator <= 0) throw std::domain_error("format_ratio: denominator must be positive");
    if (decimals < 0 || decimals > 9) throw std::domain_error("format_ratio: decimals out of range");
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;

    const bool negative = numerator < 0;
    const auto magnitude = static_cast<unsigned __int128>(negative ? -static_cast<__int128>(numerator)
                                                                   : static_cast<__int128>(numerator));
    const auto den = static_cast<unsigned __int128>(denominator);
    // Round half away from zero.
    const unsigned __int128 scaled = (magnitude * scale * 2 + den) / (den * 2);
    const auto whole = static_cast<std::uint64_t>(scaled / scale);
    const auto frac = static_cast<std::uint64_t>(scaled % scale);

    std::string out = (negative && scaled != 0) ? "-" : "";
    out += std::to_string(whole);
    if (decimals > 0) {
        std::string f = std::to_string(frac);
        out += '.';
        out.append(static_cast<std::size_t>(decimals) - f.size(), '0');
        out += f;
    }
    return out;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

}  // namespace lsa
