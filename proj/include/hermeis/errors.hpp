#pragma once

#include <stdexcept>
#include <string>

namespace hermeis {

// Requested frequency is outside what the modeled hardware can synthesize
// and acquire (below DDS resolution or above f_s/4).
struct BandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No valid acquisition schedule exists for the request.
struct PlanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct LengthError : std::length_error {
    using std::length_error::length_error;
};

// A complex response with zero magnitude (open circuit / dead channel).
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every sample of a stream clipped; the chosen output rheostat code is unusable.
struct SaturationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingGroundTruth : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hermeis
