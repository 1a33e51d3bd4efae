#include "su11/sweep.hpp"

#include "su11/errors.hpp"
#include "su11/version.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace su11 {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, std::size_t line, const std::string& key) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(key + ": not a number: '" + t + "'", line);
  }
  return value;
}

int parse_int(const std::string& text, std::size_t line, const std::string& key) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(key + ": not an integer: '" + t + "'", line);
  }
  return value;
}

Range parse_range(const std::string& text, std::size_t line, const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() == 1) {
    const double v = parse_double(parts[0], line, key);
    return {v, v, 1};
  }
  if (parts.size() != 3) {
    throw ConfigError(key + ": expected 'start, stop, count' or a single value", line);
  }
  Range range{parse_double(parts[0], line, key), parse_double(parts[1], line, key),
              parse_int(parts[2], line, key)};
  if (range.count < 1) throw ConfigError(key + ": count must be >= 1", line);
  if (range.start > range.stop) throw ConfigError(key + ": start must not exceed stop", line);
  return range;
}

void set_key(SweepConfig& c, const std::string& key, const std::string& value,
             std::size_t line) {
  const std::string v = trim(value);
  if (key == "interferometer") {
    if (v == "su11") {
      c.interferometer = InterferometerKind::su11;
    } else if (v == "mzi") {
      c.interferometer = InterferometerKind::mzi;
    } else {
      throw ConfigError("interferometer: expected su11 or mzi, got '" + v + "'", line);
    }
  } else if (key == "scheme") {
    if (v == "parity") {
      c.scheme = SweepScheme::parity;
    } else if (v == "homodyne") {
      c.scheme = SweepScheme::homodyne;
    } else if (v == "intensity") {
      c.scheme = SweepScheme::intensity;
    } else if (v == "qcrb") {
      c.scheme = SweepScheme::qcrb;
    } else {
      throw ConfigError("scheme: expected parity, homodyne, intensity or qcrb, got '" + v + "'",
                        line);
    }
  } else if (key == "coupling") {
    if (v == "independent") {
      c.coupling = Coupling::independent;
    } else if (v == "optimal_alpha") {
      c.coupling = Coupling::optimal_alpha;
    } else {
      throw ConfigError("coupling: expected independent or optimal_alpha, got '" + v + "'",
                        line);
    }
  } else if (key == "g") {
    c.g = parse_range(v, line, key);
  } else if (key == "r") {
    c.r = parse_range(v, line, key);
  } else if (key == "alpha_mag") {
    c.alpha_mag = parse_range(v, line, key);
  } else if (key == "phi") {
    c.phi = parse_range(v, line, key);
  } else if (key == "output") {
    c.output = v;
  } else if (key == "threads") {
    c.threads = parse_int(v, line, key);
    if (c.threads < 0) throw ConfigError("threads: must be >= 0", line);
  } else {
    throw ConfigError("unknown key '" + key + "'", line);
  }
}

void assign(SweepConfig& c, const std::string& text, std::size_t line) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key = value", line);
  const std::string key = trim(text.substr(0, eq));
  if (key.empty()) throw ConfigError("missing key before '='", line);
  set_key(c, key, text.substr(eq + 1), line);
}

std::string range_text(const Range& r) {
  return format_number(r.start) + ", " + format_number(r.stop) + ", " + std::to_string(r.count);
}

std::string csv_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

Interferometer make_interferometer(const SweepConfig& config, double g, double r,
                                   double alpha_mag, double phi) {
  InputState input;
  input.alpha_mag = alpha_mag;
  input.r = r;
  if (config.interferometer == InterferometerKind::mzi) {
    input.theta_alpha = std::numbers::pi / 2;
    return MziSpec{std::numbers::pi / 4, phi, input};
  }
  return SU11Spec::balanced(g, phi, input);
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  }
  return out;
}

SweepConfig parse_config(std::istream& in) {
  SweepConfig config;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    assign(config, text, line);
  }
  return config;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  return parse_config(in);
}

void apply_override(SweepConfig& config, const std::string& assignment) {
  assign(config, assignment, 0);
}

void validate(const SweepConfig& config) {
  for (const auto& [name, range] : {std::pair{"g", config.g}, std::pair{"r", config.r},
                                    std::pair{"alpha_mag", config.alpha_mag},
                                    std::pair{"phi", config.phi}}) {
    if (range.count < 1) throw ConfigError(std::string(name) + ": count must be >= 1", 0);
    if (range.start > range.stop) {
      throw ConfigError(std::string(name) + ": start must not exceed stop", 0);
    }
  }
}

std::string to_text(const SweepConfig& c) {
  static const char* schemes[] = {"parity", "homodyne", "intensity", "qcrb"};
  std::ostringstream os;
  os << "interferometer = " << to_string(c.interferometer) << '\n'
     << "scheme = " << schemes[static_cast<int>(c.scheme)] << '\n'
     << "g = " << range_text(c.g) << '\n'
     << "r = " << range_text(c.r) << '\n'
     << "alpha_mag = " << range_text(c.alpha_mag) << '\n'
     << "phi = " << range_text(c.phi) << '\n'
     << "coupling = "
     << (c.coupling == Coupling::optimal_alpha ? "optimal_alpha" : "independent") << '\n';
  if (!c.output.empty()) os << "output = " << c.output << '\n';
  return os.str();
}

SweepRow evaluate_point(const SweepConfig& config, double g, double r, double alpha_mag,
                        double phi) {
  SweepRow row{g, r, alpha_mag, phi, {}, {}, {}, {}, {}, {}};
  std::vector<std::string> errors;
  const Interferometer ifm = make_interferometer(config, g, r, alpha_mag, phi);
  try {
    row.n_total = internal_photon_number(ifm);
    const Limits limits = hl_snl(*row.n_total);
    row.hl = limits.hl;
    row.snl = limits.snl;
  } catch (const Error& e) {
    errors.emplace_back(e.what());
  }
  try {
    row.qcrb = qcrb(qfi(ifm));
  } catch (const Error& e) {
    errors.emplace_back(e.what());
  }
  try {
    switch (config.scheme) {
      case SweepScheme::qcrb:
        row.delta_phi = row.qcrb;
        break;
      case SweepScheme::parity:
        row.delta_phi = phase_sensitivity(Scheme::parity, ifm, phi).delta_phi;
        break;
      case SweepScheme::homodyne:
        row.delta_phi = phase_sensitivity(Scheme::homodyne, ifm, phi).delta_phi;
        break;
      case SweepScheme::intensity:
        row.delta_phi = phase_sensitivity(Scheme::intensity, ifm, phi).delta_phi;
        break;
    }
  } catch (const Error& e) {
    errors.emplace_back(e.what());
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    row.error += (i ? "; " : "") + errors[i];
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  validate(config);
  struct Point {
    double g, r, alpha, phi;
  };
  std::vector<Point> points;
  for (double g : config.g.values()) {
    for (double r : config.r.values()) {
      const std::vector<double> alphas = config.coupling == Coupling::optimal_alpha
                                             ? std::vector<double>{optimal_alpha(g, r)}
                                             : config.alpha_mag.values();
      for (double alpha : alphas) {
        for (double phi : config.phi.values()) points.push_back({g, r, alpha, phi});
      }
    }
  }

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const Point& p = points[i];
      rows[i] = evaluate_point(config, p.g, p.r, p.alpha, p.phi);
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, points.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }
  return rows;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "g,r,alpha_mag,phi,n_total,snl,hl,qcrb,delta_phi_scheme,error\n";
  for (const auto& row : rows) {
    out << format_number(row.g) << ',' << format_number(row.r) << ','
        << format_number(row.alpha_mag) << ',' << format_number(row.phi) << ','
        << csv_field(row.n_total) << ',' << csv_field(row.snl) << ',' << csv_field(row.hl)
        << ',' << csv_field(row.qcrb) << ',' << csv_field(row.delta_phi) << ','
        << csv_text(row.error) << '\n';
  }
}

void write_sweep_files(const SweepConfig& config, const std::vector<SweepRow>& rows,
                       const std::string& path) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    write_csv(out, rows);
  }
  std::ofstream meta(path + ".meta.txt", std::ios::binary);
  if (!meta) throw Error("cannot write '" + path + ".meta.txt'");
  const auto failed = std::count_if(rows.begin(), rows.end(),
                                     [](const SweepRow& r) { return !r.error.empty(); });
  meta << "tool = su11 " << kVersion << '\n'
       << "rows = " << rows.size() << '\n'
       << "rows_with_errors = " << failed << '\n'
       << "# config\n"
       << to_text(config);
}

SweepConfig preset(FigurePreset which) {
  SweepConfig c;
  c.interferometer = InterferometerKind::su11;
  c.scheme = SweepScheme::parity;
  switch (which) {
    case FigurePreset::fig2a:
      c.g = {0.1, 3.0, 100};
      break;
    case FigurePreset::fig2b:
      c.g = {0.5, 3.0, 101};
      c.r = {2.0, 2.0, 1};
      c.coupling = Coupling::optimal_alpha;
      break;
    case FigurePreset::fig2c:
      c.g = {2.0, 2.0, 1};
      c.r = {0.0, 3.0, 100};
      c.coupling = Coupling::optimal_alpha;
      break;
  }
  return c;
}

std::optional<FigurePreset> parse_preset(const std::string& name) {
  if (name == "fig2a") return FigurePreset::fig2a;
  if (name == "fig2b") return FigurePreset::fig2b;
  if (name == "fig2c") return FigurePreset::fig2c;
  return std::nullopt;
}

}  // namespace su11
