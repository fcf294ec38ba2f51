#include "phaseflow/errors.hpp"

namespace phaseflow {

namespace {
thread_local std::vector<std::string> g_warnings;
}

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::config: return "config error";
    case ErrorKind::aliasing: return "aliasing error";
    case ErrorKind::range: return "range error";
    case ErrorKind::regime: return "regime error";
    case ErrorKind::integration: return "integration error";
    case ErrorKind::contour: return "contour error";
    case ErrorKind::resolution: return "resolution error";
    case ErrorKind::stability: return "stability error";
    case ErrorKind::metric_unavailable: return "metric unavailable";
    case ErrorKind::singularity: return "singularity error";
    case ErrorKind::undefined: return "undefined";
    case ErrorKind::inconsistent: return "inconsistent density";
    }
    return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

void gate(bool ok, GateMode mode, const std::string& what)
{
    if (ok)
        return;
    if (mode == GateMode::enforce)
        fail(ErrorKind::regime, what);
    warn("regime gate relaxed: " + what);
}

void warn(const std::string& what)
{
    g_warnings.push_back(what);
}

std::vector<std::string> drain_warnings()
{
    std::vector<std::string> out;
    out.swap(g_warnings);
    return out;
}

} // namespace phaseflow
