#include "myopic/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>

namespace myopic {

namespace {

std::string trim(std::string_view s) {
  auto b = s.begin();
  auto e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return {b, e};
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double to_double(const std::string& text, int line, const std::string& field) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(line, field, "expected a number, got '" + t + "'");
  }
  return value;
}

int to_int(const std::string& text, int line, const std::string& field) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(line, field, "expected an integer, got '" + t + "'");
  }
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      out.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(trim(current));
  return out;
}

std::vector<double> to_doubles(const std::string& text, int line, const std::string& field) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(item, line, field));
  return out;
}

struct Entry {
  std::string value;
  int line;
};

}  // namespace

ConfigError::ConfigError(int line, std::string field, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         "field '" + field + "': " + message),
      line_(line),
      field_(std::move(field)) {}

ParsedConfig parse_config(std::istream& in) {
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, line, "unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section != "channel" && section != "scheme") {
        throw ConfigError(line_no, section, "unknown section");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_no, line, "expected 'key = value'");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    if (section.empty()) throw ConfigError(line_no, key, "entry outside of a section");
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, key, "empty key");
    auto& entries = sections[section];
    if (entries.contains(key)) throw ConfigError(line_no, key, "duplicate key");
    entries.emplace(key, Entry{value, line_no});
  }

  if (!sections.contains("channel")) throw ConfigError(0, "channel", "missing [channel] section");
  auto& ch = sections["channel"];
  static const char* const kChannelKeys[] = {"positions", "powers", "power", "noise", "kappa",
                                             "eta"};
  for (const auto& [key, entry] : ch) {
    if (std::find(std::begin(kChannelKeys), std::end(kChannelKeys), key) ==
        std::end(kChannelKeys)) {
      throw ConfigError(entry.line, key, "unknown channel key");
    }
  }
  if (!ch.contains("positions")) throw ConfigError(0, "positions", "required");

  ParsedConfig parsed;
  auto& c = parsed.channel;
  const auto& pos = ch.at("positions");
  c.positions = to_doubles(pos.value, pos.line, "positions");
  c.node_count = static_cast<int>(c.positions.size());
  if (c.node_count < 2) throw ConfigError(pos.line, "positions", "need at least two nodes");
  const auto links = static_cast<std::size_t>(c.node_count - 1);

  if (ch.contains("powers") && ch.contains("power")) {
    throw ConfigError(ch.at("power").line, "power", "give either 'power' or 'powers'");
  }
  if (ch.contains("powers")) {
    const auto& e = ch.at("powers");
    c.powers = to_doubles(e.value, e.line, "powers");
    if (c.powers.size() != links) {
      throw ConfigError(e.line, "powers", "expected " + std::to_string(links) + " values");
    }
  } else {
    const double p = ch.contains("power")
                         ? to_double(ch.at("power").value, ch.at("power").line, "power")
                         : 1.0;
    c.powers.assign(links, p);
  }
  if (ch.contains("noise")) {
    const auto& e = ch.at("noise");
    auto values = to_doubles(e.value, e.line, "noise");
    if (values.size() == 1) values.assign(links, values.front());
    if (values.size() != links) {
      throw ConfigError(e.line, "noise", "expected 1 or " + std::to_string(links) + " values");
    }
    c.noise = std::move(values);
  } else {
    c.noise.assign(links, 1.0);
  }
  if (ch.contains("kappa")) c.kappa = to_double(ch.at("kappa").value, ch.at("kappa").line, "kappa");
  if (ch.contains("eta")) c.eta = to_double(ch.at("eta").value, ch.at("eta").line, "eta");
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, "channel", e.what());
  }

  if (sections.contains("scheme")) {
    auto& sc = sections["scheme"];
    SchemeSpec scheme{1, identity_ordering(c.node_count)};
    for (const auto& [key, entry] : sc) {
      if (key == "hops") {
        const std::string v = lower(entry.value);
        scheme.hops = v == "omniscient" ? c.node_count - 1 : to_int(entry.value, entry.line, key);
      } else if (key == "ordering") {
        scheme.ordering.clear();
        for (const auto& item : split_list(entry.value)) {
          scheme.ordering.push_back(to_int(item, entry.line, key));
        }
      } else {
        throw ConfigError(entry.line, key, "unknown scheme key");
      }
    }
    try {
      validate(scheme, c.node_count);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(0, "scheme", e.what());
    }
    parsed.scheme = std::move(scheme);
  }
  return parsed;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "file", "cannot open '" + path + "'");
  return parse_config(in);
}

ChannelConfig parse_uniform(const std::vector<std::string>& tokens) {
  std::map<std::string, std::string> kv;
  for (const auto& token : tokens) {
    for (const auto& part : split_list(token)) {
      if (part.empty()) continue;
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw ConfigError(0, part, "expected key=value");
      const std::string key = lower(trim(part.substr(0, eq)));
      if (key != "t" && key != "spacing" && key != "power" && key != "noise" && key != "eta") {
        throw ConfigError(0, key, "unknown uniform-line key");
      }
      kv[key] = part.substr(eq + 1);
    }
  }
  if (!kv.contains("t")) throw ConfigError(0, "T", "required");
  const int T = to_int(kv["t"], 0, "T");
  const double spacing = kv.contains("spacing") ? to_double(kv["spacing"], 0, "spacing") : 1.0;
  const double power = kv.contains("power") ? to_double(kv["power"], 0, "power") : 1.0;
  const double noise = kv.contains("noise") ? to_double(kv["noise"], 0, "noise") : 1.0;
  const double eta = kv.contains("eta") ? to_double(kv["eta"], 0, "eta") : 2.0;
  try {
    return uniform_line_config(T, spacing, power, noise, eta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, "uniform", e.what());
  }
}

int parse_hops(const std::string& token, int node_count) {
  std::string t = lower(trim(token));
  if (t.starts_with("k=")) t = t.substr(2);
  if (t == "omniscient" || t == "omni") return node_count - 1;
  const int k = to_int(t, 0, "scheme");
  if (k < 1 || k > node_count - 1) {
    throw ConfigError(0, "scheme", "hop depth " + std::to_string(k) + " outside 1.." +
                                       std::to_string(node_count - 1));
  }
  return k;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace myopic
