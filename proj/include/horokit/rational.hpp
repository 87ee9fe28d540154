#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace horokit {

using Q = mpq_class;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;
using IVec = std::vector<long>;

enum class ErrorCode {
    UnknownFamily,
    InvalidRank,
    TrivialRootHasNoCoroot,
    NotSmooth,
    ParseError,
    InvalidFan,
    NotLocallyFactorial,
    NotComplete,
    UnsupportedFan,
    NotQCartier,
    NotCartier,
    EmptyPolytope,
    Unbounded,
    NotAdmissible,
    IncompatibleQuadruples,
    NotAMorphism,
    NonAmpleStart,
    NotAdmissibleAtZero,
    PreconditionViolated,
    NoBreakpoints,
    SpecInvariantViolated,
    NotRestricted,
    UnsupportedCase,
    NormalizationDivergence,
    InputError,
    NotAColor,
    EmptyFace,
    NoMaximalPreimage,
    DegenerateFamily,
    DegenerateBranch,
    NotAmple,
    AssertionBZeta,
    NotSmoothInput,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& msg)
        : std::runtime_error(std::string(error_name(c)) + ": " + msg), code(c) {}
    ErrorCode code;
};

// "p/q" or "p"
std::string to_string(const Q& q);
Q parse_rational(const std::string& s);

inline QVec zeros(size_t n) { return QVec(n, Q(0)); }
QVec to_qvec(const IVec& v);
IVec to_ivec(const QVec& v);  // throws if not integral
bool is_integral(const Q& q);
bool is_integral(const QVec& v);

Q dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const QVec& a, const Q& s);
bool is_zero(const QVec& v);

}  // namespace horokit
