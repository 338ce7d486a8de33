#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

enum class ErrorKind {
    ZeroDivision,
    DimensionMismatch,
    SingularForm,
    Singular,
    SingularMetric,
    UnsupportedSpectrum,
    UnsupportedAlgebra,
    UnsupportedOrder,
    UnknownName,
    NotParallel,
    NotFlat,
    NonInvertibleStep,
    ChainBroken,
    NoUnity,
    WrongAlgebra,
    NotAssociative,
    NotCommutative,
    Degenerate,
    Unclassifiable,
    Parse,
    Domain,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the engine carries a kind so the CLI can map it to
// an exit code and tests can assert on the category.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace darboux
