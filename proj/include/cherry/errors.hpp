#pragma once

#include <stdexcept>
#include <string>

namespace cherry {

// Error classes map onto CLI exit codes: 2 config, 3 numeric, 4 certificate.
enum class ErrorClass : int {
    Config = 2,
    Numeric = 3,
    Certificate = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what)
        : std::runtime_error(what), cls_(cls) {}

    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& what)
        : Error(ErrorClass::Config, "invalid config: " + what) {}
};

struct ExpansivityViolated : Error {
    double min_slope;
    explicit ExpansivityViolated(double g)
        : Error(ErrorClass::Numeric,
                "bridge is not expansive: min slope " + std::to_string(g) + " <= 1"),
          min_slope(g) {}
};

struct UndefinedAtCorner : Error {
    double where;
    explicit UndefinedAtCorner(double y)
        : Error(ErrorClass::Numeric,
                "derivative undefined at flat-arc corner y = " + std::to_string(y)),
          where(y) {}
};

struct AmbiguousAtTolerance : Error {
    double last_intersection;
    explicit AmbiguousAtTolerance(double y)
        : Error(ErrorClass::Certificate,
                "last intersection within tolerance of both flat-arc endpoints"),
          last_intersection(y) {}
};

struct NotMonotone : Error {
    explicit NotMonotone(const std::string& what)
        : Error(ErrorClass::Certificate, "family not monotone: " + what) {}
};

struct ScaleRangeInvalid : Error {
    double eps, floor_eps;
    ScaleRangeInvalid(double e, double f)
        : Error(ErrorClass::Config,
                "scale ladder entry " + std::to_string(e) +
                    " below cover resolution " + std::to_string(f)),
          eps(e), floor_eps(f) {}
};

struct RangeMismatch : Error {
    explicit RangeMismatch(const std::string& what)
        : Error(ErrorClass::Numeric, "rotation ranges do not match: " + what) {}
};

struct NotInsideFlatArc : Error {
    double d, theta;
    NotInsideFlatArc(double dv, double th)
        : Error(ErrorClass::Config,
                "cell point " + std::to_string(dv) + " leaves the open flat arc at theta = " +
                    std::to_string(th)),
          d(dv), theta(th) {}
};

struct DepthOverflow : Error {
    std::size_t count;
    explicit DepthOverflow(std::size_t n)
        : Error(ErrorClass::Numeric,
                "survivor cover interval count " + std::to_string(n) + " exceeds cap"),
          count(n) {}
};

struct ClassNViolated : Error {
    explicit ClassNViolated(const std::string& what)
        : Error(ErrorClass::Certificate, "class-N validation failed: " + what) {}
};

struct NoCrossing : Error {
    explicit NoCrossing(const std::string& what)
        : Error(ErrorClass::Numeric, "no section crossing: " + what) {}
};

struct SaddleNotFound : Error {
    explicit SaddleNotFound(const std::string& what)
        : Error(ErrorClass::Numeric, "saddle not found: " + what) {}
};

struct NoSignChange : Error {
    explicit NoSignChange(const std::string& what)
        : Error(ErrorClass::Numeric, "no sign change over bracket: " + what) {}
};

struct DivergenceDetected : Error {
    explicit DivergenceDetected(const std::string& what)
        : Error(ErrorClass::Certificate, "winding diagnostic diverged: " + what) {}
};

struct NotExpanding : Error {
    explicit NotExpanding(double g)
        : Error(ErrorClass::Certificate,
                "surgery target is not expanding: min slope " + std::to_string(g)) {}
};

struct CornerFitFailed : Error {
    explicit CornerFitFailed(const std::string& what)
        : Error(ErrorClass::Certificate, "corner asymptotics fit failed: " + what) {}
};

}  // namespace cherry
