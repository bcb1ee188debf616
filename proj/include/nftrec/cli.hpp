#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace nftrec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `recsys` tool. Results go to `out`, diagnostics to
/// `err`. Returns 0 on success, 1 on domain errors (not found, parse, I/O,
/// fetch), 2 on usage errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nftrec::cli
