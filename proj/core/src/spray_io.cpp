#include "spraywork/spray_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "spraywork/errors.hpp"

namespace spraywork {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Removes a '#' comment that is not inside a quoted string.
std::string drop_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string parse_quoted(const std::string& v, const std::string& key) {
  std::string s = strip(v);
  if (s.size() < 2 || s.front() != '"' || s.back() != '"')
    throw ConfigError("value of '" + key + "' must be a quoted string");
  return s.substr(1, s.size() - 2);
}

SprayModel from_fields(int dim, const std::string& label,
                       const std::vector<std::string>& exprs,
                       const std::string& name) {
  if (dim < 2) throw ConfigError(name + ": dimension must be >= 2");
  if (static_cast<int>(exprs.size()) != dim)
    throw ConfigError(name + ": expected " + std::to_string(dim) +
                      " coefficient expressions, got " +
                      std::to_string(exprs.size()));
  SprayModel m;
  m.n = dim;
  m.label = label;
  for (const auto& s : exprs) m.coeffs.push_back(parse(s, dim));
  return m;
}

SprayModel parse_json(const std::string& text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(name + ": invalid JSON: " + e.what());
  }
  if (!j.contains("dimension") || !j.contains("coeffs"))
    throw ConfigError(name + ": JSON spray needs 'dimension' and 'coeffs'");
  std::vector<std::string> exprs;
  for (const auto& c : j["coeffs"]) exprs.push_back(c.get<std::string>());
  return from_fields(j["dimension"].get<int>(), j.value("label", ""), exprs,
                     name);
}

SprayModel parse_toml(const std::string& text, const std::string& name) {
  int dim = -1;
  std::string label;
  std::vector<std::string> exprs;
  bool have_coeffs = false;

  std::istringstream in(text);
  std::string line;
  std::string pending;  // unterminated array accumulator
  bool in_array = false;
  while (std::getline(in, line)) {
    line = strip(drop_comment(line));
    if (line.empty()) continue;
    if (in_array) {
      pending += " " + line;
      if (line.find(']') == std::string::npos) continue;
      line = pending;
      in_array = false;
    } else {
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(name + ": expected 'key = value', got '" + line +
                          "'");
      std::string key = strip(line.substr(0, eq));
      std::string val = strip(line.substr(eq + 1));
      if (key == "coeffs" && val.find(']') == std::string::npos) {
        pending = line;
        in_array = true;
        continue;
      }
    }
    std::size_t eq = line.find('=');
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (key == "dimension") {
      try {
        dim = std::stoi(val);
      } catch (...) {
        throw ConfigError(name + ": dimension must be an integer");
      }
    } else if (key == "label") {
      label = parse_quoted(val, key);
    } else if (key == "coeffs") {
      if (val.empty() || val.front() != '[' || val.back() != ']')
        throw ConfigError(name + ": coeffs must be an array of strings");
      std::string body = val.substr(1, val.size() - 2);
      // split on commas outside quotes
      std::string cur;
      bool quoted = false;
      have_coeffs = true;
      auto flush = [&]() {
        std::string s = strip(cur);
        if (!s.empty()) exprs.push_back(parse_quoted(s, "coeffs"));
        cur.clear();
      };
      for (char c : body) {
        if (c == '"') quoted = !quoted;
        if (c == ',' && !quoted) {
          flush();
          continue;
        }
        cur += c;
      }
      flush();
    } else {
      throw ConfigError(name + ": unknown key '" + key + "'");
    }
  }
  if (dim < 0) throw ConfigError(name + ": missing 'dimension'");
  if (!have_coeffs) throw ConfigError(name + ": missing 'coeffs'");
  return from_fields(dim, label, exprs, name);
}

}  // namespace

SprayModel parse_spray_text(const std::string& text, const std::string& name) {
  std::string t = strip(text);
  if (!t.empty() && t.front() == '{') return parse_json(text, name);
  return parse_toml(text, name);
}

SprayModel load_spray(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spray file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spray_text(buf.str(), path);
}

std::string spray_to_text(const SprayModel& model) {
  std::ostringstream out;
  out << "dimension = " << model.n << "\n";
  out << "label = \"" << model.label << "\"\n";
  out << "coeffs = [\n";
  for (int i = 0; i < model.n; ++i)
    out << "  \"" << print(model.coeffs[i]) << "\",\n";
  out << "]\n";
  return out.str();
}

void save_spray(const SprayModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write spray file: " + path);
  out << spray_to_text(model);
}

}  // namespace spraywork
