#include "lnelab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lnelab::harness {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  // shortest decimal form that round-trips
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string germ_to_json(const variety::ImplicitGerm& germ) {
  json doc;
  doc["name"] = germ.name;
  doc["ambient_dim"] = germ.ambient_dim();
  doc["basepoint"] = std::vector<double>(germ.basepoint.data(),
                                         germ.basepoint.data() + germ.basepoint.size());
  json eqs = json::array();
  for (const auto& eq : germ.equations) {
    json terms = json::array();
    for (const auto& t : eq.terms())
      terms.push_back({{"coeff", t.coeff}, {"exponents", t.exponents}});
    eqs.push_back({{"terms", terms}});
  }
  doc["equations"] = eqs;
  doc["residual_tol"] = germ.residual_tol;
  doc["domain_radius"] = germ.domain_radius;
  return doc.dump(2) + "\n";
}

variety::ImplicitGerm germ_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("germ spec is not valid JSON: ") + e.what());
  }
  try {
    const int dim = doc.at("ambient_dim").get<int>();
    const auto bp = doc.at("basepoint").get<std::vector<double>>();
    if (static_cast<int>(bp.size()) != dim)
      throw std::invalid_argument("basepoint length disagrees with ambient_dim");
    Vec basepoint(dim);
    for (int i = 0; i < dim; ++i) basepoint[i] = bp[i];

    std::vector<variety::SparsePolynomial> equations;
    for (const auto& eq : doc.at("equations")) {
      std::vector<variety::PolyTerm> terms;
      for (const auto& t : eq.at("terms")) {
        variety::PolyTerm term;
        term.coeff = t.at("coeff").get<double>();
        term.exponents = t.at("exponents").get<std::vector<int>>();
        terms.push_back(std::move(term));
      }
      equations.emplace_back(dim, std::move(terms));
    }

    variety::ImplicitGerm germ;
    germ.name = doc.value("name", std::string("germ"));
    germ.equations = std::move(equations);
    germ.basepoint = std::move(basepoint);
    germ.residual_tol = doc.at("residual_tol").get<double>();
    germ.domain_radius = doc.at("domain_radius").get<double>();
    if (germ.residual_tol <= 0.0 || germ.domain_radius <= 0.0)
      throw std::invalid_argument("tolerances must be positive");
    if (germ.max_residual(germ.basepoint) > germ.residual_tol)
      throw std::invalid_argument("basepoint is not on the variety");
    return germ;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("germ spec is malformed: ") + e.what());
  }
}

variety::ImplicitGerm load_germ(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open germ spec: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return germ_from_json(buf.str());
}

void save_germ(const variety::ImplicitGerm& germ, const std::filesystem::path& path) {
  atomic_write(path, germ_to_json(germ));
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string sweep_csv(const linkscan::SliceSweep& sweep) {
  std::ostringstream os;
  os << "t,n_samples,n_components,C_t,d0,stable\n";
  for (const auto& rec : sweep.records) {
    os << format_double(rec.t) << "," << rec.n_samples << "," << rec.n_components << ","
       << format_double(rec.constant) << "," << format_double(rec.d0) << ","
       << (rec.stable ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string cloud_csv(const variety::SampleCloud& cloud) {
  std::ostringstream os;
  for (int c = 0; c < cloud.dim(); ++c) os << (c ? "," : "") << "x" << c;
  os << "\n";
  for (int i = 0; i < cloud.size(); ++i) {
    for (int c = 0; c < cloud.dim(); ++c)
      os << (c ? "," : "") << format_double(cloud.points(i, c));
    os << "\n";
  }
  return os.str();
}

namespace {

json verdict_json(const linkscan::LlneVerdict& v) {
  return {{"classification", linkscan::to_string(v.classification)},
          {"slope", v.slope},
          {"slope_stderr", v.slope_stderr},
          {"uniform_constant_estimate", v.uniform_constant_estimate},
          {"separation_K", std::isfinite(v.separation_K) ? json(v.separation_K)
                                                         : json("inf")},
          {"records_used", v.records_used}};
}

}  // namespace

std::string sweep_summary_json(const linkscan::SliceSweep& sweep,
                               const linkscan::LlneVerdict& verdict, std::uint64_t seed) {
  json doc;
  doc["kind"] = "sweep";
  doc["germ"] = sweep.germ_ref;
  doc["norm"] = sweep.norm.to_string();
  doc["seed"] = seed;
  doc["schedule"] = sweep.schedule;
  json recs = json::array();
  for (const auto& r : sweep.records) {
    recs.push_back({{"t", r.t},
                    {"n_samples", r.n_samples},
                    {"n_components", r.n_components},
                    {"C_t", r.constant},
                    {"d0", std::isfinite(r.d0) ? json(r.d0) : json("inf")},
                    {"stable", r.stable},
                    {"empty", r.empty}});
  }
  doc["records"] = recs;
  doc["verdict"] = verdict_json(verdict);
  return doc.dump(2) + "\n";
}

std::string crosscheck_summary_json(const CorpusEntry* entry, const std::string& germ_name,
                                    const classify::CrossCheckReport& report,
                                    std::uint64_t seed) {
  json doc;
  doc["kind"] = "crosscheck";
  doc["germ"] = germ_name;
  doc["seed"] = seed;
  doc["route_a"] = {{"classification", linkscan::to_string(report.route_a.classification)},
                    {"slope", report.route_a.slope},
                    {"slope_stderr", report.route_a.slope_stderr},
                    {"radii", report.route_a.radii},
                    {"constants", report.route_a.constants}};
  doc["route_b"] = verdict_json(report.route_b);
  doc["agree"] = report.agree;
  doc["conclusive"] = report.conclusive;
  doc["matches_exact"] = report.matches_exact;
  if (report.exact_lne) doc["exact_lne"] = *report.exact_lne;
  if (entry) {
    doc["expected_lne"] = entry->lne;
    doc["llne_exception"] = entry->llne_exception;
    doc["subanalytic"] = entry->subanalytic;
    doc["rationale"] = entry->rationale;
  }
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

ReportResult merge_reports(const std::vector<std::string>& summaries) {
  ReportResult result;
  std::ostringstream os;
  os << "# lnelab report\n\n";
  os << "| germ | kind | classification | slope | separation K | expected | status |\n";
  os << "|------|------|----------------|-------|--------------|----------|--------|\n";
  int warnings = 0;
  std::ostringstream flags;
  for (const auto& text : summaries) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("summary is not valid JSON: ") + e.what());
    }
    const std::string kind = doc.value("kind", "?");
    const std::string germ = doc.value("germ", "?");
    std::string cls = "?", slope = "", sep = "", expected = "", status = "ok";
    if (kind == "sweep") {
      const auto& v = doc.at("verdict");
      cls = v.value("classification", "?");
      slope = format_double(v.value("slope", 0.0));
      sep = v.at("separation_K").is_string() ? "inf"
                                             : format_double(v.at("separation_K").get<double>());
      if (cls == "inconclusive") {
        status = "warning: inconclusive";
        ++warnings;
      }
    } else if (kind == "crosscheck") {
      const auto& b = doc.at("route_b");
      cls = doc.at("route_a").value("classification", "?") + "/" +
            b.value("classification", "?");
      slope = format_double(doc.at("route_a").value("slope", 0.0));
      sep = b.at("separation_K").is_string() ? "inf"
                                             : format_double(b.at("separation_K").get<double>());
      if (doc.contains("expected_lne"))
        expected = doc["expected_lne"].get<bool>() ? "LNE" : "non-LNE";
      const bool exception = doc.value("llne_exception", false);
      if (!doc.value("matches_exact", true)) {
        status = "conflict: numerics vs exact classifier";
        flags << "- " << germ << ": numeric routes disagree with the exact verdict\n";
        ++warnings;
      } else if (!doc.value("agree", false)) {
        if (exception) {
          status = "documented disagreement";
        } else {
          status = "warning: routes disagree";
          ++warnings;
        }
      }
    }
    os << "| " << germ << " | " << kind << " | " << cls << " | " << slope << " | " << sep
       << " | " << expected << " | " << status << " |\n";
    ++result.row_count;
  }
  os << "\nwarnings: " << warnings << "\n";
  const std::string flagged = flags.str();
  if (!flagged.empty()) os << "\nconflicts:\n" << flagged;
  result.document = os.str();
  result.warning_count = warnings;
  return result;
}

linkscan::NormSpec parse_norm(const std::string& text, int ambient_dim) {
  if (text.empty() || text == "euclidean" || text == "euclid")
    return linkscan::NormSpec::euclidean();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, sep)) parts.push_back(item);
    return parts;
  };
  try {
    if (head == "max" || head == "max_v") {
      const auto parts = split(rest, ',');
      if (static_cast<int>(parts.size()) != ambient_dim)
        throw std::invalid_argument("max norm needs one weight per coordinate");
      Vec w(ambient_dim);
      for (int i = 0; i < ambient_dim; ++i) w[i] = std::stod(parts[i]);
      return linkscan::NormSpec::max_weighted(w);
    }
    if (head == "one_p") {
      const auto parts = split(rest, ':');
      const int p = std::stoi(parts.at(0));
      const int s = parts.size() > 1 ? std::stoi(parts[1]) : 0;
      return linkscan::NormSpec::one_p(p, s);
    }
    if (head == "b_one") {
      const auto parts = split(rest, ':');
      const int b = std::stoi(parts.at(0));
      const int s = parts.size() > 1 ? std::stoi(parts[1]) : ambient_dim - 1;
      return linkscan::NormSpec::b_one(b, s);
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed norm spec: " + text);
  }
  throw std::invalid_argument("unknown norm spec: " + text);
}

}  // namespace lnelab::harness
