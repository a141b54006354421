#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rlmoc/bench.hpp"
#include "rlmoc/errors.hpp"

namespace rlmoc {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ParseError("bad number '" + s + "' in results");
  return v;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

// Column names for the objective values, suffixed by position when an
// objective appears more than once.
std::vector<std::string> value_columns(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const bool repeated = std::count(names.begin(), names.end(), names[i]) > 1;
    out.push_back(repeated ? names[i] + "_" + std::to_string(i + 1) : names[i]);
  }
  return out;
}

nlohmann::json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  return value_to_json(v);
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string slack_label(const std::vector<double>& slack) {
  std::string out;
  for (std::size_t i = 0; i < slack.size(); ++i) {
    if (i) out += ';';
    out += format_double(slack[i]);
  }
  return out;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
  if (records.empty()) throw ConfigError("no records to report");
  const auto cols = value_columns(records.front().objective_names);
  std::ostringstream out;
  out << "algorithm,k,slack,seed";
  for (const auto& c : cols) out << ',' << csv_escape(c);
  out << ",wall_ms,error\n";
  for (const auto& r : records) {
    out << csv_escape(r.algorithm) << ',' << r.k << ',' << slack_label(r.slack) << ',' << r.seed;
    for (double v : r.values) out << ',' << format_double(v);
    out << ',' << format_double(r.wall_ms) << ',' << csv_escape(r.error) << '\n';
  }
  return out.str();
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty results CSV");
  const auto header = csv_split(line);
  if (header.size() < 6 || header[0] != "algorithm" || header[header.size() - 1] != "error") {
    throw ParseError("unexpected results CSV header");
  }
  const std::vector<std::string> names(header.begin() + 4, header.end() - 2);
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv_split(line);
    if (f.size() != header.size()) throw ParseError("results CSV row has the wrong field count");
    RunRecord r;
    r.algorithm = f[0];
    r.k = std::stoi(f[1]);
    std::istringstream slack(f[2]);
    for (std::string part; std::getline(slack, part, ';');) r.slack.push_back(parse_double(part));
    r.seed = std::stoull(f[3]);
    r.objective_names = names;
    for (std::size_t i = 0; i < names.size(); ++i) r.values.push_back(parse_double(f[4 + i]));
    r.wall_ms = parse_double(f[f.size() - 2]);
    r.error = f.back();
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json records_to_json(const std::vector<RunRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["algorithm"] = r.algorithm;
    j["k"] = r.k;
    j["slack"] = r.slack;
    j["seed"] = r.seed;
    j["objectives"] = r.objective_names;
    nlohmann::json vals = nlohmann::json::array();
    for (double v : r.values) vals.push_back(number_json(v));
    j["values"] = vals;
    j["wall_ms"] = r.wall_ms;
    j["error"] = r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error);
    arr.push_back(std::move(j));
  }
  return nlohmann::json{{"records", arr}};
}

std::vector<RunRecord> records_from_json(const nlohmann::json& j) {
  std::vector<RunRecord> out;
  try {
    for (const auto& x : j.at("records")) {
      RunRecord r;
      r.algorithm = x.at("algorithm").get<std::string>();
      r.k = x.at("k").get<int>();
      r.slack = x.at("slack").get<std::vector<double>>();
      r.seed = x.at("seed").get<std::uint64_t>();
      r.objective_names = x.at("objectives").get<std::vector<std::string>>();
      for (const auto& v : x.at("values")) r.values.push_back(number_from_json(v));
      r.wall_ms = x.at("wall_ms").get<double>();
      if (!x.at("error").is_null()) r.error = x.at("error").get<std::string>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad results JSON: ") + e.what());
  }
  return out;
}

std::string render_svg(const std::vector<RunRecord>& records, std::size_t objective,
                       const std::vector<double>& slack) {
  // algorithm -> k -> (sum, count)
  std::map<std::string, std::map<int, std::pair<double, int>>> series;
  std::vector<std::string> order;
  std::string title;
  for (const auto& r : records) {
    if (r.slack != slack || objective >= r.values.size()) continue;
    title = r.objective_names[objective];
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) {
      order.push_back(r.algorithm);
    }
    const double v = r.values[objective];
    if (!r.error.empty() || !std::isfinite(v)) continue;
    auto& cell = series[r.algorithm][r.k];
    cell.first += v;
    ++cell.second;
  }

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool any = false;
  for (const auto& [alg, pts] : series) {
    for (const auto& [k, acc] : pts) {
      const double y = acc.first / acc.second;
      if (!any) {
        xmin = xmax = k;
        ymin = ymax = y;
        any = true;
      }
      xmin = std::min<double>(xmin, k);
      xmax = std::max<double>(xmax, k);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  const double w = 640, hgt = 400, left = 70, right = 150, top = 40, bottom = 50;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (w - left - right); };
  auto py = [&](double y) { return hgt - bottom - (y - ymin) / (ymax - ymin) * (hgt - top - bottom); };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << hgt
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << xml_escape(title)
    << " (slack " << xml_escape(slack_label(slack)) << ")</text>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << hgt - bottom << "\" x2=\"" << w - right
    << "\" y2=\"" << hgt - bottom << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
    << hgt - bottom << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << hgt - 12 << "\">k</text>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = ymin + (ymax - ymin) * t / 4;
    s << "<text x=\"" << left - 6 << "\" y=\"" << fixed(py(y) + 4)
      << "\" text-anchor=\"end\">" << fixed(y) << "</text>\n";
  }
  std::set<int> ks;
  for (const auto& [alg, pts] : series) {
    for (const auto& [k, acc] : pts) ks.insert(k);
  }
  for (int k : ks) {
    s << "<text x=\"" << fixed(px(k)) << "\" y=\"" << hgt - bottom + 16
      << "\" text-anchor=\"middle\">" << k << "</text>\n";
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const char* color = kColors[i % 5];
    const auto it = series.find(order[i]);
    if (it != series.end()) {
      s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      bool first = true;
      for (const auto& [k, acc] : it->second) {
        s << (first ? "" : " ") << fixed(px(k)) << ',' << fixed(py(acc.first / acc.second));
        first = false;
      }
      s << "\"/>\n";
    }
    const double ly = top + 20.0 * static_cast<double>(i);
    s << "<line x1=\"" << w - right + 15 << "\" y1=\"" << ly << "\" x2=\"" << w - right + 40
      << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << w - right + 46 << "\" y=\"" << ly + 4 << "\">" << xml_escape(order[i])
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> emit_report(const std::vector<RunRecord>& records,
                                               const std::vector<std::string>& formats,
                                               const std::filesystem::path& outdir) {
  if (records.empty()) throw ConfigError("no records to report");
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + outdir.string() + "'");
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
    out << text;
    written.push_back(p);
  };
  auto wants = [&](const char* f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };
  if (wants("csv")) write(outdir / "results.csv", records_to_csv(records));
  if (wants("json")) write(outdir / "results.json", records_to_json(records).dump(2) + "\n");
  if (wants("svg")) {
    std::vector<std::vector<double>> slacks;
    for (const auto& r : records) {
      if (std::find(slacks.begin(), slacks.end(), r.slack) == slacks.end()) {
        slacks.push_back(r.slack);
      }
    }
    const auto cols = value_columns(records.front().objective_names);
    for (std::size_t o = 0; o < cols.size(); ++o) {
      for (const auto& s : slacks) {
        std::string label = slack_label(s);
        std::replace(label.begin(), label.end(), ';', '_');
        write(outdir / (cols[o] + "_slack_" + label + ".svg"), render_svg(records, o, s));
      }
    }
  }
  return written;
}

}  // namespace rlmoc
