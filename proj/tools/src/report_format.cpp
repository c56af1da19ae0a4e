#include "report_format.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "norlund/errors.hpp"

namespace norlund::cli {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string sci(const BigReal& x, int digits = 3) { return x.to_scientific(digits); }

std::string tolerance_text(const Rational& r) { return r.to_bigreal(128).to_scientific(3); }

const char* kind_name(ParamKind k) {
  switch (k) {
    case ParamKind::integer:
      return "integer";
    case ParamKind::rational:
      return "rational";
    case ParamKind::real:
      return "real";
  }
  return "real";
}

std::string param_values(const Params& ps) { return format_params(ps); }

std::vector<std::string> sample_labels(const Identity& e) {
  std::vector<std::string> out;
  for (const auto& s : samples(e)) {
    out.push_back(s.special ? s.label + " [" + format_params(s.params) + "]" : s.label);
  }
  return out;
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "text") return Format::text;
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw UsageError("unknown format '" + text + "' (text, json, csv)");
}

std::string decimal(const BigReal& x, int precision_bits) {
  return x.rescale(precision_bits).to_decimal(BigReal::decimal_digits(precision_bits));
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json report_json(const VerificationReport& r, int p, bool with_timing) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : r.params) params[name] = value.to_string();
  nlohmann::json j;
  j["id"] = r.id;
  j["sample"] = r.sample;
  j["params"] = params;
  j["method"] = r.method;
  j["terms_used"] = r.terms_used;
  j["lhs"] = decimal(r.lhs, p);
  j["rhs"] = decimal(r.rhs, p);
  j["abs_error"] = decimal(r.abs_error, p);
  j["tolerance"] = decimal(r.tolerance, p);
  j["passed"] = r.passed;
  if (with_timing) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(3) << r.elapsed_ms;
    j["elapsed_ms"] = ms.str();
  }
  j["error_estimate"] = decimal(r.error_estimate, p);
  j["tail_bound"] = r.tail_bound ? nlohmann::json(decimal(*r.tail_bound, p)) : nlohmann::json(nullptr);
  j["notes"] = r.notes;
  return j;
}

void write_reports(std::ostream& out, const std::vector<VerificationReport>& reports, Format format, int p) {
  if (format == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(report_json(r, p));
    out << arr.dump(2) << "\n";
    return;
  }
  if (format == Format::csv) {
    out << "id,sample,params,method,terms_used,lhs,rhs,abs_error,tolerance,passed,elapsed_ms,error_estimate,"
           "tail_bound,notes\n";
    for (const auto& r : reports) {
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(3) << r.elapsed_ms;
      out << csv_field(r.id) << ',' << csv_field(r.sample) << ',' << csv_field(param_values(r.params)) << ','
          << r.method << ',' << r.terms_used << ',' << decimal(r.lhs, p) << ',' << decimal(r.rhs, p) << ','
          << decimal(r.abs_error, p) << ',' << decimal(r.tolerance, p) << ',' << (r.passed ? "true" : "false")
          << ',' << ms.str() << ',' << decimal(r.error_estimate, p) << ','
          << (r.tail_bound ? decimal(*r.tail_bound, p) : "") << ',' << csv_field(join(r.notes, "; ")) << '\n';
    }
    return;
  }
  long passed = 0;
  for (const auto& r : reports) {
    if (r.passed) ++passed;
    out << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << param_values(r.params);
    if (r.sample != param_values(r.params)) out << "  [" << r.sample << "]";
    out << "\n     method=" << r.method << " terms_used=" << r.terms_used << " abs_error=" << sci(r.abs_error)
        << " tolerance=" << sci(r.tolerance) << " error_estimate=" << sci(r.error_estimate);
    if (r.tail_bound) out << " tail_bound=" << sci(*r.tail_bound);
    out << " elapsed_ms=" << std::fixed << std::setprecision(1) << r.elapsed_ms << std::defaultfloat << "\n";
    out << "     lhs=" << decimal(r.lhs, p) << "\n     rhs=" << decimal(r.rhs, p) << "\n";
    for (const auto& n : r.notes) out << "     note: " << n << "\n";
  }
  out << passed << "/" << reports.size() << " passed\n";
}

void write_identities(std::ostream& out, const std::vector<const Identity*>& ids, Format format) {
  if (format == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Identity* e : ids) {
      nlohmann::json params = nlohmann::json::array();
      for (const auto& p : e->params) params.push_back({{"name", p.name}, {"kind", kind_name(p.kind)}});
      nlohmann::json defaults = nlohmann::json::array();
      for (const auto& s : e->default_samples) defaults.push_back(format_params(s));
      nlohmann::json specials = nlohmann::json::array();
      for (const auto& s : e->specials) specials.push_back({{"label", s.label}, {"params", format_params(s.params)}});
      arr.push_back({{"id", e->id},
                     {"tag", e->tag},
                     {"params", params},
                     {"domain", e->domain_text()},
                     {"convergence", e->convergence_text()},
                     {"default_samples", defaults},
                     {"specials", specials},
                     {"tolerance", tolerance_text(e->tolerance)},
                     {"derived_from", e->derived_from ? nlohmann::json(*e->derived_from) : nlohmann::json(nullptr)},
                     {"notes", e->notes}});
    }
    out << arr.dump(2) << "\n";
    return;
  }
  if (format == Format::csv) {
    out << "id,tag,params,domain,convergence,tolerance,samples\n";
    for (const Identity* e : ids) {
      out << csv_field(e->id) << ',' << csv_field(e->tag) << ',' << csv_field(e->param_text()) << ','
          << csv_field(e->domain_text()) << ',' << csv_field(e->convergence_text()) << ','
          << tolerance_text(e->tolerance) << ',' << csv_field(join(sample_labels(*e), "; ")) << '\n';
    }
    return;
  }
  out << "id | params | domain | convergence | tolerance | samples | identity\n";
  for (const Identity* e : ids) {
    out << e->id << " | " << e->param_text() << " | " << e->domain_text() << " | " << e->convergence_text()
        << " | " << tolerance_text(e->tolerance) << " | " << join(sample_labels(*e), "; ") << " | " << e->tag
        << "\n";
  }
}

void write_dump(std::ostream& out, const std::vector<DumpRow>& rows, Format format, int p) {
  if (format == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n}, {"t_n", decimal(r.term, p)}, {"S_n", decimal(r.partial, p)},
                     {"abs_error", decimal(r.error, p)}});
    }
    out << arr.dump(2) << "\n";
    return;
  }
  if (format == Format::csv) {
    out << "n,t_n,S_n,abs_error\n";
    for (const auto& r : rows) {
      out << r.n << ',' << decimal(r.term, p) << ',' << decimal(r.partial, p) << ',' << decimal(r.error, p) << '\n';
    }
    return;
  }
  out << std::left << std::setw(8) << "n" << std::setw(28) << "t_n" << std::setw(28) << "S_n"
      << "|S_n - RHS|\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(8) << r.n << std::setw(28) << sci(r.term, 20) << std::setw(28)
        << sci(r.partial, 20) << sci(r.error, 6) << "\n";
  }
}

}  // namespace norlund::cli
