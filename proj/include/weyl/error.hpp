#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weyl {

// Failure kinds surfaced by the library. Verdict-like outcomes (NotMember,
// Undecided, Inconclusive, ...) are ordinary return values, not errors.
enum class errc {
    not_monic,
    rational_root_found,
    division_by_zero,
    field_mismatch,
    degenerate_group,
    zero_generators,
    singular_block,
    shape_mismatch,
    signature_mismatch,
    axis_out_of_range,
    not_a_basis,
    tuple_mismatch,
    witness_invalid,
    generator_check_failed,
    zero_element,
    scalar_input,
    parse_error,
    unknown_axis,
    alpha_not_in_gamma,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::not_monic: return "NotMonic";
    case errc::rational_root_found: return "RationalRootFound";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::degenerate_group: return "DegenerateGroup";
    case errc::zero_generators: return "ZeroGenerators";
    case errc::singular_block: return "SingularBlock";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::signature_mismatch: return "SignatureMismatch";
    case errc::axis_out_of_range: return "AxisOutOfRange";
    case errc::not_a_basis: return "NotABasis";
    case errc::tuple_mismatch: return "TupleMismatch";
    case errc::witness_invalid: return "WitnessInvalid";
    case errc::generator_check_failed: return "GeneratorCheckFailed";
    case errc::zero_element: return "ZeroElement";
    case errc::scalar_input: return "ScalarInput";
    case errc::parse_error: return "ParseError";
    case errc::unknown_axis: return "UnknownAxis";
    case errc::alpha_not_in_gamma: return "AlphaNotInGamma";
    case errc::internal: return "InternalError";
    }
    return "?";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

// Text-level failure; `pos` is a 0-based offset into the offending input.
class parse_error : public error {
  public:
    parse_error(std::size_t pos, const std::string& what, errc code = errc::parse_error)
        : error(code, what + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}

    std::size_t pos() const { return pos_; }

  private:
    std::size_t pos_;
};

} // namespace weyl
