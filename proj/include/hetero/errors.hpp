// SPDX-License-Identifier: Apache-2.0

#ifndef HETERO_ERRORS_HPP
#define HETERO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hetero {

/// Base of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or unusable input (bad file, bad argument ranges). CLI exit code 2.
struct InputError : Error {
    using Error::Error;
};

/// Numerically degenerate input (zero variance, all-zero details, ...). CLI exit code 3.
struct DegeneracyError : Error {
    using Error::Error;
};

// grid
struct BadMagic : InputError { using InputError::InputError; };
struct TruncatedData : InputError { using InputError::InputError; };
struct RangeError : InputError { using InputError::InputError; };
struct TooSmall : InputError { using InputError::InputError; };

// dwt
struct TooShort : InputError { using InputError::InputError; };
struct BadLevels : InputError { using InputError::InputError; };
struct ShapeMismatch : InputError { using InputError::InputError; };
struct DegenerateSignal : DegeneracyError { using DegeneracyError::DegeneracyError; };

// cwt
struct BadScale : InputError { using InputError::InputError; };
struct BadOmega : InputError { using InputError::InputError; };
struct ZeroPower : DegeneracyError { using DegeneracyError::DegeneracyError; };

// mfdfa
struct SingularFit : InputError { using InputError::InputError; };
struct AllSegmentsDegenerate : DegeneracyError { using DegeneracyError::DegeneracyError; };
struct NegativeMomentOnZero : DegeneracyError { using DegeneracyError::DegeneracyError; };
struct FitFailure : DegeneracyError { using DegeneracyError::DegeneracyError; };
struct TooFewPoints : InputError { using InputError::InputError; };

// synth
struct BadParam : InputError { using InputError::InputError; };
struct BadH : BadParam { using BadParam::BadParam; };
struct BadLength : BadParam { using BadParam::BadParam; };
struct EmbeddingFailure : DegeneracyError { using DegeneracyError::DegeneracyError; };

// report / cli
struct ConfigMismatch : InputError { using InputError::InputError; };
struct ParseError : InputError { using InputError::InputError; };
struct IoError : InputError { using InputError::InputError; };

}  // namespace hetero

#endif  // HETERO_ERRORS_HPP
