#include "xduct/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "xduct/errors.hpp"
#include "xduct/units.hpp"

namespace xduct {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string raw;
  int line = 0;
};

using Table = std::map<std::string, Entry>;  // "section.key" -> value

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"params",
       {"omega_m_hz", "delta_o_hz", "delta_e_hz", "kappa_o_hz", "kappa_e_hz", "kappa_m_hz",
        "kappa_o_ex_hz", "kappa_e_ex_hz", "kappa_m_ex_hz", "g_o_hz", "g_e_hz"}},
      {"drive", {"mode", "omega_hz", "omega_o_hz", "omega_e_hz", "n_sidebands"}},
      {"probe", {"omega_hz"}},
      {"sweep", {"from_hz", "to_hz", "points"}},
      {"tune", {"lo_hz", "hi_hz", "n_sidebands"}},
  };
  return s;
}

Table tokenize(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header on line " + std::to_string(number));
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) throw ConfigError("unknown section: [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value on line " + std::to_string(number));
    const std::string key = trim(line.substr(0, eq));
    if (section.empty()) throw ConfigError("key outside of a section: " + key);
    if (!schema().at(section).count(key)) throw ConfigError("unknown key: " + section + "." + key);
    const std::string full = section + "." + key;
    if (table.count(full)) throw ConfigError("duplicate key: " + full);
    table[full] = Entry{trim(line.substr(eq + 1)), number};
  }
  return table;
}

double to_number(const std::string& key, const Entry& e) {
  double v = 0.0;
  const char* first = e.raw.data();
  const char* last = first + e.raw.size();
  if (!e.raw.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigError("invalid number for key " + key + ": " + e.raw);
  return v;
}

int to_int(const std::string& key, const Entry& e) {
  int v = 0;
  const char* first = e.raw.data();
  const char* last = first + e.raw.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigError("invalid integer for key " + key + ": " + e.raw);
  return v;
}

std::string to_string(const std::string& key, const Entry& e) {
  if (e.raw.size() < 2 || e.raw.front() != '"' || e.raw.back() != '"') {
    throw ConfigError("expected a quoted string for key " + key);
  }
  return e.raw.substr(1, e.raw.size() - 2);
}

struct Reader {
  const Table& table;

  const Entry* find(const std::string& key) const {
    const auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
  }
  double hz(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw ConfigError("missing key: " + key);
    return units::hz_to_rad(to_number(key, *e));
  }
  std::optional<double> opt_number(const std::string& key) const {
    const Entry* e = find(key);
    return e ? std::optional<double>(to_number(key, *e)) : std::nullopt;
  }
  std::optional<int> opt_int(const std::string& key) const {
    const Entry* e = find(key);
    return e ? std::optional<int>(to_int(key, *e)) : std::nullopt;
  }
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  const Table table = tokenize(text);
  const Reader r{table};
  RunConfig c;

  SystemParams& p = c.params;
  p.omega_m = r.hz("params.omega_m_hz");
  p.delta_o = r.hz("params.delta_o_hz");
  p.delta_e = r.hz("params.delta_e_hz");
  p.kappa_o = r.hz("params.kappa_o_hz");
  p.kappa_e = r.hz("params.kappa_e_hz");
  p.kappa_m = r.hz("params.kappa_m_hz");
  p.kappa_o_ex = r.hz("params.kappa_o_ex_hz");
  p.kappa_e_ex = r.hz("params.kappa_e_ex_hz");
  p.kappa_m_ex = r.find("params.kappa_m_ex_hz") ? r.hz("params.kappa_m_ex_hz") : p.kappa_m;
  p.g_o = r.hz("params.g_o_hz");
  p.g_e = r.hz("params.g_e_hz");

  const Entry* mode = r.find("drive.mode");
  const std::string mode_name = mode ? to_string("drive.mode", *mode) : "constant";
  if (mode_name == "constant") {
    c.drive.mode = DriveMode::Constant;
  } else if (mode_name == "parametric") {
    c.drive.mode = DriveMode::Parametric;
  } else {
    throw ConfigError("invalid value for key drive.mode: " + mode_name);
  }
  if (r.find("drive.omega_hz")) {
    if (r.find("drive.omega_o_hz") || r.find("drive.omega_e_hz")) {
      throw ConfigError("drive.omega_hz conflicts with drive.omega_o_hz / drive.omega_e_hz");
    }
    c.drive.omega_drive = r.hz("drive.omega_hz");
  } else if (r.find("drive.omega_o_hz") || r.find("drive.omega_e_hz")) {
    const double o = r.hz("drive.omega_o_hz");
    const double e = r.hz("drive.omega_e_hz");
    if (o != e) throw ConfigError("asymmetric drive is not supported: drive.omega_o_hz != drive.omega_e_hz");
    c.drive.omega_drive = o;
  }
  c.drive.n_sidebands = r.opt_int("drive.n_sidebands").value_or(c.drive.mode == DriveMode::Parametric ? 2 : 1);

  if (const Entry* e = r.find("probe.omega_hz")) {
    if (e->raw == "\"omega-m\"") {
      c.probe_omega.reset();
    } else {
      c.probe_omega = units::hz_to_rad(to_number("probe.omega_hz", *e));
    }
  }

  c.sweep.from_hz = r.opt_number("sweep.from_hz");
  c.sweep.to_hz = r.opt_number("sweep.to_hz");
  c.sweep.points = r.opt_int("sweep.points");

  if (r.find("tune.lo_hz") || r.find("tune.hi_hz")) {
    c.tune.lo = r.hz("tune.lo_hz");
    c.tune.hi = r.hz("tune.hi_hz");
    c.tune.has_bracket = true;
  }
  c.tune.n_sidebands = r.opt_int("tune.n_sidebands").value_or(2);

  try {
    validate(c.params);
    validate(c.drive);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace xduct
