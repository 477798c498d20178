#pragma once

#include <functional>
#include <string_view>

namespace colldec
{

/// Receives non-fatal warnings (weak geometric limit, eta out of its
/// first-order window, ...). The default handler writes to stderr.
using DiagnosticHandler = std::function<void(std::string_view)>;

/// Install a handler and return the previous one. Passing an empty
/// function restores the stderr default.
DiagnosticHandler set_diagnostic_handler(DiagnosticHandler handler);

void emit_diagnostic(std::string_view message);

}  // namespace colldec
