#include "sqrtlap/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

std::string fmt17(Real value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

Real parse_real(const std::string& section, const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const Real v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::CONFIG, "invalid number for " + section + "." + key + ": " + value);
  }
}

std::vector<Real> parse_reals(const std::string& section, const std::string& key,
                              const std::string& value) {
  std::vector<Real> out;
  std::istringstream in(value);
  std::string tok;
  while (in >> tok) out.push_back(parse_real(section, key, tok));
  if (out.empty()) throw Error(ErrorCode::CONFIG, section + "." + key + " needs values");
  return out;
}

std::optional<Real> parse_auto_real(const std::string& section, const std::string& key,
                                    const std::string& value) {
  if (value == "auto") return std::nullopt;
  return parse_real(section, key, value);
}

bool is_report_section(const std::string& name) {
  return name == "results" || name == "constants" || name == "chain" || name == "errors" ||
         name == "eigenvalues" || name.rfind("solution", 0) == 0;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  bool skipping = false;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::CONFIG, "malformed section header at line " +
                                           std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      skipping = is_report_section(section);
      if (!skipping && section != "domain" && section != "beta" && section != "nonlinearity" &&
          section != "variational" && section != "solver" && section != "output")
        throw Error(ErrorCode::CONFIG, "unknown section [" + section + "]");
      continue;
    }
    if (skipping) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::CONFIG, "expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw Error(ErrorCode::CONFIG, "key outside any section: " + key);

    if (section == "domain") {
      if (key == "kind") cfg.domain_kind = value;
      else if (key == "sizes") cfg.domain_sizes = parse_reals(section, key, value);
      else throw Error(ErrorCode::CONFIG, "unknown key domain." + key);
    } else if (section == "beta") {
      if (key == "constant") {
        cfg.beta_is_constant = true;
        cfg.beta_constant = parse_real(section, key, value);
      } else if (key == "grid_file") {
        cfg.beta_is_constant = false;
        cfg.beta_grid_file = value;
      } else {
        throw Error(ErrorCode::CONFIG, "unknown key beta." + key);
      }
    } else if (section == "nonlinearity") {
      if (key == "kind") cfg.nl_kind = value;
      else if (key == "scale") cfg.nl_scale = parse_real(section, key, value);
      else if (key == "growth") cfg.nl_growth = parse_real(section, key, value);
      else if (key == "m") cfg.nl_m = parse_real(section, key, value);
      else if (key == "zeta") cfg.nl_zeta = parse_real(section, key, value);
      else if (key == "file") cfg.nl_file = value;
      else if (key == "a1") cfg.nl_a1 = parse_real(section, key, value);
      else if (key == "a2") cfg.nl_a2 = parse_real(section, key, value);
      else if (key == "q") cfg.nl_q = parse_real(section, key, value);
      else throw Error(ErrorCode::CONFIG, "unknown key nonlinearity." + key);
    } else if (section == "variational") {
      if (key == "tau") cfg.tau = parse_auto_real(section, key, value);
      else if (key == "x0") {
        if (value == "auto") cfg.x0 = std::nullopt;
        else cfg.x0 = parse_reals(section, key, value);
      }
      else if (key == "gamma") cfg.gamma = parse_auto_real(section, key, value);
      else if (key == "rho") cfg.rho = parse_auto_real(section, key, value);
      else if (key == "lambda") cfg.lambda = parse_auto_real(section, key, value);
      else throw Error(ErrorCode::CONFIG, "unknown key variational." + key);
    } else if (section == "solver") {
      if (key == "modes") cfg.modes = static_cast<int>(parse_real(section, key, value));
      else if (key == "quad_order") cfg.quad_order = static_cast<int>(parse_real(section, key, value));
      else if (key == "tol_res") cfg.tol_res = parse_real(section, key, value);
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_real(section, key, value));
      else if (key == "restarts") cfg.restarts = static_cast<int>(parse_real(section, key, value));
      else if (key == "max_iter") cfg.max_iter = static_cast<int>(parse_real(section, key, value));
      else if (key == "ascent_steps") cfg.ascent_steps = static_cast<int>(parse_real(section, key, value));
      else throw Error(ErrorCode::CONFIG, "unknown key solver." + key);
    } else if (section == "output") {
      if (key == "directory") cfg.out_dir = value;
      else if (key == "grid_resolution") cfg.grid_resolution = static_cast<int>(parse_real(section, key, value));
      else throw Error(ErrorCode::CONFIG, "unknown key output." + key);
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::CONFIG, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto opt = [](const std::optional<Real>& v) { return v ? fmt17(*v) : std::string("auto"); };

  out << "[domain]\n";
  out << "kind = " << cfg.domain_kind << "\n";
  out << "sizes =";
  for (Real s : cfg.domain_sizes) out << " " << fmt17(s);
  out << "\n\n";

  out << "[beta]\n";
  if (cfg.beta_is_constant)
    out << "constant = " << fmt17(cfg.beta_constant) << "\n";
  else
    out << "grid_file = " << cfg.beta_grid_file << "\n";
  out << "\n";

  out << "[nonlinearity]\n";
  out << "kind = " << cfg.nl_kind << "\n";
  if (cfg.nl_kind == "power") {
    out << "scale = " << fmt17(cfg.nl_scale) << "\n";
    out << "growth = " << fmt17(cfg.nl_growth) << "\n";
  } else if (cfg.nl_kind == "bump" || cfg.nl_kind == "truncated_bump") {
    out << "m = " << fmt17(cfg.nl_m) << "\n";
    out << "zeta = " << fmt17(cfg.nl_zeta) << "\n";
  } else if (cfg.nl_kind == "tabulated") {
    out << "file = " << cfg.nl_file << "\n";
  }
  if (cfg.nl_a1) out << "a1 = " << fmt17(*cfg.nl_a1) << "\n";
  if (cfg.nl_a2) out << "a2 = " << fmt17(*cfg.nl_a2) << "\n";
  if (cfg.nl_q) out << "q = " << fmt17(*cfg.nl_q) << "\n";
  out << "\n";

  out << "[variational]\n";
  out << "tau = " << opt(cfg.tau) << "\n";
  if (cfg.x0) {
    out << "x0 =";
    for (Real v : *cfg.x0) out << " " << fmt17(v);
    out << "\n";
  } else {
    out << "x0 = auto\n";
  }
  out << "gamma = " << opt(cfg.gamma) << "\n";
  out << "rho = " << opt(cfg.rho) << "\n";
  out << "lambda = " << opt(cfg.lambda) << "\n\n";

  out << "[solver]\n";
  out << "modes = " << cfg.modes << "\n";
  out << "quad_order = " << cfg.quad_order << "\n";
  out << "tol_res = " << fmt17(cfg.tol_res) << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "restarts = " << cfg.restarts << "\n";
  out << "max_iter = " << cfg.max_iter << "\n";
  out << "ascent_steps = " << cfg.ascent_steps << "\n\n";

  out << "[output]\n";
  out << "directory = " << cfg.out_dir << "\n";
  out << "grid_resolution = " << cfg.grid_resolution << "\n";
  return out.str();
}

void require_complete(const RunConfig& cfg, const std::string& command) {
  if (cfg.domain_kind.empty())
    throw Error(ErrorCode::CONFIG, "missing required key domain.kind");
  if (cfg.domain_kind != "rectangle" && cfg.domain_kind != "disk")
    throw Error(ErrorCode::CONFIG, "domain.kind must be rectangle or disk");
  if (cfg.domain_sizes.empty())
    throw Error(ErrorCode::CONFIG, "missing required key domain.sizes");
  if (command == "eigen") return;

  if (cfg.nl_kind.empty())
    throw Error(ErrorCode::CONFIG, "missing required key nonlinearity.kind");
  if (cfg.nl_kind != "power" && cfg.nl_kind != "bump" && cfg.nl_kind != "truncated_bump" &&
      cfg.nl_kind != "tabulated")
    throw Error(ErrorCode::CONFIG, "unknown nonlinearity.kind: " + cfg.nl_kind);
  if (cfg.nl_kind == "tabulated") {
    if (cfg.nl_file.empty())
      throw Error(ErrorCode::CONFIG, "missing required key nonlinearity.file");
    if (!cfg.nl_a1 || !cfg.nl_a2 || !cfg.nl_q)
      throw Error(ErrorCode::CONFIG,
                  "tabulated nonlinearities need explicit certificates a1, a2, q");
  }
  if (!cfg.beta_is_constant && cfg.beta_grid_file.empty())
    throw Error(ErrorCode::CONFIG, "missing required key beta.grid_file");
}

}  // namespace sqrtlap
