#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace phaseflow {

enum class ErrorKind {
    config,
    aliasing,
    range,
    regime,
    integration,
    contour,
    resolution,
    stability,
    metric_unavailable,
    singularity,
    undefined,
    inconsistent,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }
    bool is_config() const noexcept { return kind_ == ErrorKind::config; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Regime gates quantify "much greater than" conditions. In warn mode a
// violated gate is recorded instead of raised.
enum class GateMode { enforce, warn };

void gate(bool ok, GateMode mode, const std::string& what);

// Warnings collected on the current thread since the last drain.
void warn(const std::string& what);
std::vector<std::string> drain_warnings();

} // namespace phaseflow
