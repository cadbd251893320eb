#pragma once

#include <stdexcept>
#include <string>

namespace minsurf {

enum class ErrorKind {
    InvalidArgument,
    StencilUnderflow,
    NonconstantQ,
    CircularEllipse,
    DegenerateEllipse,
    GramDrift,
    PositivityViolation,
    SubstitutionDomain,
    InadmissibleT,
    StructureViolation,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::StencilUnderflow: return "StencilUnderflow";
    case ErrorKind::NonconstantQ: return "NonconstantQ";
    case ErrorKind::CircularEllipse: return "CircularEllipse";
    case ErrorKind::DegenerateEllipse: return "DegenerateEllipse";
    case ErrorKind::GramDrift: return "GramDrift";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::SubstitutionDomain: return "SubstitutionDomain";
    case ErrorKind::InadmissibleT: return "InadmissibleT";
    case ErrorKind::StructureViolation: return "StructureViolation";
    }
    return "Unknown";
}

class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace minsurf
