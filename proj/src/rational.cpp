#include "horokit/rational.hpp"

namespace horokit {

const char* error_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::TrivialRootHasNoCoroot: return "TrivialRootHasNoCoroot";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidFan: return "InvalidFan";
    case ErrorCode::NotLocallyFactorial: return "NotLocallyFactorial";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::UnsupportedFan: return "UnsupportedFan";
    case ErrorCode::NotQCartier: return "NotQCartier";
    case ErrorCode::NotCartier: return "NotCartier";
    case ErrorCode::EmptyPolytope: return "EmptyPolytope";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::IncompatibleQuadruples: return "IncompatibleQuadruples";
    case ErrorCode::NotAMorphism: return "NotAMorphism";
    case ErrorCode::NonAmpleStart: return "NonAmpleStart";
    case ErrorCode::NotAdmissibleAtZero: return "NotAdmissibleAtZero";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NoBreakpoints: return "NoBreakpoints";
    case ErrorCode::SpecInvariantViolated: return "SpecInvariantViolated";
    case ErrorCode::NotRestricted: return "NotRestricted";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::NormalizationDivergence: return "NormalizationDivergence";
    case ErrorCode::InputError: return "InputError";
    case ErrorCode::NotAColor: return "NotAColor";
    case ErrorCode::EmptyFace: return "EmptyFace";
    case ErrorCode::NoMaximalPreimage: return "NoMaximalPreimage";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::DegenerateBranch: return "DegenerateBranch";
    case ErrorCode::NotAmple: return "NotAmple";
    case ErrorCode::AssertionBZeta: return "AssertionBZeta";
    case ErrorCode::NotSmoothInput: return "NotSmoothInput";
    }
    return "Error";
}

std::string to_string(const Q& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Q parse_rational(const std::string& s)
{
    Q q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    if (q.get_den() == 0)
        throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

QVec to_qvec(const IVec& v)
{
    QVec r;
    r.reserve(v.size());
    for (long x : v) r.emplace_back(x);
    return r;
}

bool is_integral(const Q& q) { return q.get_den() == 1; }

bool is_integral(const QVec& v)
{
    for (auto& x : v)
        if (!is_integral(x)) return false;
    return true;
}

IVec to_ivec(const QVec& v)
{
    IVec r;
    for (auto& x : v) {
        if (!is_integral(x))
            throw Error(ErrorCode::PreconditionViolated, "non-integral vector entry " + to_string(x));
        r.push_back(x.get_num().get_si());
    }
    return r;
}

Q dot(const QVec& a, const QVec& b)
{
    Q s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec add(const QVec& a, const QVec& b)
{
    QVec r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b)
{
    QVec r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

QVec scale(const QVec& a, const Q& s)
{
    QVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

bool is_zero(const QVec& v)
{
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace horokit
