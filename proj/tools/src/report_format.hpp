#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "norlund/catalog.hpp"

namespace norlund::cli {

enum class Format { text, json, csv };
Format parse_format(const std::string& text);

/// Digits after the point for a P-bit value: ceil(P log10 2).
std::string decimal(const BigReal& x, int precision_bits);

std::string csv_field(const std::string& field);

nlohmann::json report_json(const VerificationReport& r, int precision_bits, bool with_timing = true);
void write_reports(std::ostream& out, const std::vector<VerificationReport>& reports, Format format,
                   int precision_bits);

void write_identities(std::ostream& out, const std::vector<const Identity*>& ids, Format format);

struct DumpRow {
  long n;
  BigReal term;
  BigReal partial;
  BigReal error;
};
void write_dump(std::ostream& out, const std::vector<DumpRow>& rows, Format format, int precision_bits);

}  // namespace norlund::cli
