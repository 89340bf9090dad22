#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cayleytones {

enum class ErrorCode {
    invalid_argument,
    modulus_mismatch,
    not_a_unit,
    unreachable,
    precondition,
    // musical system validation
    factors_not_coprime,
    modulus_not_product,
    factor_out_of_range,
    octave_ratio,
    base_frequency,
    not_generating,
    // chords and counterpoint
    invalid_chord,
    no_strong_dichotomy,
    ambiguous,
    // audio
    invalid_envelope,
    buffer_mismatch,
    empty_plan,
    io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map them onto exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// True for errors caused by bad user input rather than internal faults.
    bool is_validation() const noexcept { return code_ != ErrorCode::io; }

private:
    ErrorCode code_;
};

} // namespace cayleytones
