#include "zeldovich/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zeldovich {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw std::runtime_error("constants line " + std::to_string(line) + ": not a number: " + v);
  return out;
}

int parse_int(const std::string& v, int line) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw std::runtime_error("constants line " + std::to_string(line) + ": not an integer: " + v);
  return out;
}

}  // namespace

NobleGasAtom ConstantsConfig::atom(const std::string& symbol) const {
  NobleGasAtom out = noble_gas(symbol);
  if (auto it = mass_numbers.find(symbol); it != mass_numbers.end()) out.A = it->second;
  out.bohr_b = constants.bohr_b;
  return out;
}

ConstantsConfig parse_constants(const std::string& text) {
  ConstantsConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  const auto symbols = noble_gas_symbols();
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("constants line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    auto& c = cfg.constants;
    if (key == "alpha") c.alpha = parse_double(val, line);
    else if (key == "lambda_bar") c.lambda_bar = parse_double(val, line);
    else if (key == "bohr_b") c.bohr_b = parse_double(val, line);
    else if (key == "proton_a") c.proton_a = parse_double(val, line);
    else if (key == "mu_geom") c.mu_geom = parse_double(val, line);
    else if (key.rfind("mass_number.", 0) == 0) {
      const std::string sym = key.substr(12);
      if (std::find(symbols.begin(), symbols.end(), sym) == symbols.end())
        throw std::runtime_error("constants line " + std::to_string(line) + ": unknown element " + sym);
      const int A = parse_int(val, line);
      if (A < 1) throw std::runtime_error("constants line " + std::to_string(line) + ": A must be >= 1");
      cfg.mass_numbers[sym] = A;
    } else {
      throw std::runtime_error("constants line " + std::to_string(line) + ": unknown key " + key);
    }
  }
  try {
    cfg.constants.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("constants: ") + e.what());
  }
  return cfg;
}

ConstantsConfig load_constants_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open constants file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_constants(ss.str());
}

ConstantsConfig resolve_constants(const std::optional<std::string>& path) {
  if (path) return load_constants_file(*path);
  if (const char* env = std::getenv("NZ_CONSTANTS"); env && *env) return load_constants_file(env);
  return {};
}

}  // namespace zeldovich
