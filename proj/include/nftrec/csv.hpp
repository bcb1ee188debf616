#pragma once

#include <string>
#include <string_view>

namespace nftrec {

/// RFC 4180 quoting: fields containing a comma, quote or newline are
/// wrapped in quotes with embedded quotes doubled.
std::string csv_field(std::string_view s);

/// "%.12g" rendering used by every CSV export.
std::string format_real(double v);

} // namespace nftrec
