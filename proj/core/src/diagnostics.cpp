#include "colldec/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace colldec
{
namespace
{
std::mutex g_mutex;
DiagnosticHandler g_handler;
}  // namespace

DiagnosticHandler set_diagnostic_handler(DiagnosticHandler handler)
{
    std::lock_guard lock(g_mutex);
    return std::exchange(g_handler, std::move(handler));
}

void emit_diagnostic(std::string_view message)
{
    std::lock_guard lock(g_mutex);
    if (g_handler)
    {
        g_handler(message);
    }
    else
    {
        std::cerr << "colldec: warning: " << message << '\n';
    }
}

}  // namespace colldec
