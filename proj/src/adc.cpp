#include "hermeis/adc.hpp"

#include <cmath>

#include "hermeis/errors.hpp"

namespace hermeis {

void AdcSpec::validate() const {
    if (!(v_dd > 0.0)) throw ValidationError("adc v_dd must be positive");
    if (bits < 1 || bits > 24) throw ValidationError("adc resolution must lie in [1, 24] bits");
}

std::pair<int, bool> adc_quantize(double v, double v_dd, int bits) {
    const double full = static_cast<double>((std::int64_t(1) << bits) - 1);
    double code = std::floor(v / v_dd * full + 0.5);
    if (code < 0.0) return {0, true};
    if (code > full) return {static_cast<int>(full), true};
    return {static_cast<int>(code), false};
}

}  // namespace hermeis
