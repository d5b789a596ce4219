#pragma once

#include <stdexcept>
#include <string>

namespace nikmop {

// Error codes shared with the C API (see include/nikmop.h).
enum class ErrCode {
    NonFinite = 1,
    NotConverged,
    RootCountMismatch,
    SingularGram,
    EvalOnSupport,
    OverlappingSupports,
    GridMismatch,
    NonPositiveSample,
    NonPositiveWeight,
    InvalidClass,
    NotInSnPlus,
    MaxIterations,
    ParseError,
    ValidationError,
    IoError,
    CorruptEntry,
    BadArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrCode code() const { return code_; }

private:
    ErrCode code_;
};

struct NonFiniteError : Error {
    explicit NonFiniteError(const std::string& m) : Error(ErrCode::NonFinite, m) {}
};
struct NotConvergedError : Error {
    explicit NotConvergedError(const std::string& m) : Error(ErrCode::NotConverged, m) {}
};
struct RootCountMismatchError : Error {
    RootCountMismatchError(int found, int expected, const std::string& m)
        : Error(ErrCode::RootCountMismatch, m), found(found), expected(expected) {}
    int found;
    int expected;
};
struct SingularGramError : Error {
    explicit SingularGramError(const std::string& m) : Error(ErrCode::SingularGram, m) {}
};
struct EvalOnSupportError : Error {
    explicit EvalOnSupportError(const std::string& m) : Error(ErrCode::EvalOnSupport, m) {}
};
struct OverlappingSupportsError : Error {
    explicit OverlappingSupportsError(const std::string& m) : Error(ErrCode::OverlappingSupports, m) {}
};
struct GridMismatchError : Error {
    explicit GridMismatchError(const std::string& m) : Error(ErrCode::GridMismatch, m) {}
};
struct NonPositiveSampleError : Error {
    explicit NonPositiveSampleError(const std::string& m) : Error(ErrCode::NonPositiveSample, m) {}
};
struct NonPositiveWeightError : Error {
    explicit NonPositiveWeightError(const std::string& m) : Error(ErrCode::NonPositiveWeight, m) {}
};
struct InvalidClassError : Error {
    explicit InvalidClassError(const std::string& m) : Error(ErrCode::InvalidClass, m) {}
};
struct NotInSnPlusError : Error {
    explicit NotInSnPlusError(const std::string& m) : Error(ErrCode::NotInSnPlus, m) {}
};
struct MaxIterationsError : Error {
    MaxIterationsError(const std::string& m, double last_ratio)
        : Error(ErrCode::MaxIterations, m), last_contraction_ratio(last_ratio) {}
    double last_contraction_ratio;
};
struct ParseError : Error {
    ParseError(int line, int col, const std::string& m)
        : Error(ErrCode::ParseError, m), line(line), col(col) {}
    int line;
    int col;
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& m) : Error(ErrCode::ValidationError, m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrCode::IoError, m) {}
};
struct CorruptEntryError : Error {
    explicit CorruptEntryError(const std::string& m) : Error(ErrCode::CorruptEntry, m) {}
};

} // namespace nikmop
