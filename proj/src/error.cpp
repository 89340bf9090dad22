#include "cayleytones/error.hpp"

namespace cayleytones {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::modulus_mismatch: return "modulus mismatch";
    case ErrorCode::not_a_unit: return "not a unit";
    case ErrorCode::unreachable: return "unreachable";
    case ErrorCode::precondition: return "precondition violated";
    case ErrorCode::factors_not_coprime: return "factors not coprime";
    case ErrorCode::modulus_not_product: return "modulus is not p*q";
    case ErrorCode::factor_out_of_range: return "factor out of range";
    case ErrorCode::octave_ratio: return "octave ratio must exceed 1";
    case ErrorCode::base_frequency: return "base frequency must be positive";
    case ErrorCode::not_generating: return "generators do not generate";
    case ErrorCode::invalid_chord: return "invalid chord";
    case ErrorCode::no_strong_dichotomy: return "no strong dichotomy";
    case ErrorCode::ambiguous: return "ambiguous";
    case ErrorCode::invalid_envelope: return "invalid envelope";
    case ErrorCode::buffer_mismatch: return "buffer mismatch";
    case ErrorCode::empty_plan: return "empty plan";
    case ErrorCode::io: return "i/o failure";
    }
    return "unknown";
}

} // namespace cayleytones
