#include "vkg/bump.hpp"

#include "vkg/error.hpp"

namespace vkg {

Bump1D::Kind parse_bump_kind(const std::string& name)
{
    if (name == "exp")
        return Bump1D::Kind::Exp;
    if (name == "poly")
        return Bump1D::Kind::Poly;
    throw DomainError("unknown bump kind '" + name + "' (expected exp or poly)");
}

std::string bump_kind_name(Bump1D::Kind kind) { return kind == Bump1D::Kind::Exp ? "exp" : "poly"; }

} // namespace vkg
