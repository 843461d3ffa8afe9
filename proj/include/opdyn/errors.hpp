#pragma once

#include <stdexcept>
#include <string>

namespace opdyn {

// Numeric failure modes carry a stable name so callers (and the CLI exit
// path) can report them without parsing the message text.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define OPDYN_DEFINE_ERROR(NAME)                                               \
    class NAME : public Error {                                                \
    public:                                                                    \
        explicit NAME(const std::string& what) : Error(#NAME, what) {}         \
    }

OPDYN_DEFINE_ERROR(NoRootOnRay);
OPDYN_DEFINE_ERROR(CriticalPoint);
OPDYN_DEFINE_ERROR(ContourTooClose);
OPDYN_DEFINE_ERROR(ContourHitsZero);
OPDYN_DEFINE_ERROR(QuadratureInconclusive);
OPDYN_DEFINE_ERROR(OriginInHull);
OPDYN_DEFINE_ERROR(RayMultiHit);
OPDYN_DEFINE_ERROR(EigenvalueZero);
OPDYN_DEFINE_ERROR(ConstructionError);
OPDYN_DEFINE_ERROR(InvalidArc);
OPDYN_DEFINE_ERROR(ConfigError);

#undef OPDYN_DEFINE_ERROR

}  // namespace opdyn
