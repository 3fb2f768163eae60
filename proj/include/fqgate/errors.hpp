#pragma once

#include <stdexcept>
#include <string>

namespace fqgate {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- sample / geometry validation --------------------------------------
struct DegenerateBoxError : Error {
    using Error::Error;
};
struct KeypointOutsideBoxError : Error {
    using Error::Error;
};
struct NonFiniteValueError : Error {
    using Error::Error;
};

// -- embeddings ---------------------------------------------------------
struct DimensionMismatchError : Error {
    using Error::Error;
};
struct ZeroNormEmbeddingError : Error {
    using Error::Error;
};

// -- datasets / splitting ----------------------------------------------
struct TooFewSamplesError : Error {
    using Error::Error;
};

// -- training / scoring -------------------------------------------------
struct UnlabeledSampleError : Error {
    using Error::Error;
};
struct SingleClassTrainingSetError : Error {
    using Error::Error;
};
struct FeatureOrderMismatchError : Error {
    using Error::Error;
};
struct EmptyNodeError : Error {
    using Error::Error;
};

// -- verification ---------------------------------------------------------
struct UnknownSubjectError : Error {
    using Error::Error;
};
struct MissingEmbeddingError : Error {
    using Error::Error;
};
struct MissingLandmarksError : Error {
    using Error::Error;
};

// -- configuration / persistence / ingestion -----------------------------
struct InvalidConfigError : Error {
    using Error::Error;
};
struct FormatVersionMismatchError : Error {
    using Error::Error;
};
struct CorruptModelFileError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace fqgate
