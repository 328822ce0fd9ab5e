#include "hyplns/ilp_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hyplns/errors.hpp"

namespace hyplns {

namespace {

using nlohmann::json;

constexpr const char* kCanonicalVersion = "hyplns-ilp/1";

long line_of_byte(const std::string& text, std::size_t byte) {
  long line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Sense sense_from_string(const std::string& s, long line = -1) {
  if (s == ">=") return Sense::Ge;
  if (s == "<=") return Sense::Le;
  if (s == "=") return Sense::Eq;
  throw ParseError("unknown sense '" + s + "'", line);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 12-significant-digit value field; exact for the integral data this project
// emits and narrow enough for the fixed MPS layout.
std::string mps_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

FileFormat format_from_string(const std::string& name) {
  if (name == "canonical" || name == "json") return FileFormat::Canonical;
  if (name == "mps") return FileFormat::Mps;
  throw ParameterError("unknown format '" + name + "' (expected canonical|mps)");
}

void write_canonical(const IlpInstance& instance, const std::string& path) {
  instance.validate();
  json j;
  j["version"] = kCanonicalVersion;
  j["direction"] = to_string(instance.direction);
  j["num_vars"] = instance.num_vars;
  j["objective"] = instance.objective;
  json rows = json::array();
  for (const auto& row : instance.constraints) {
    json r;
    r["cols"] = row.cols;
    r["coefs"] = row.coefs;
    r["sense"] = to_string(row.sense);
    r["rhs"] = row.rhs;
    rows.push_back(std::move(r));
  }
  j["constraints"] = std::move(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

IlpInstance read_canonical(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("canonical parse failed: ") + e.what(),
                     line_of_byte(text, e.byte));
  }
  try {
    if (!j.contains("version") || j["version"] != kCanonicalVersion)
      throw ParseError(std::string("unsupported version (expected ") + kCanonicalVersion + ")");
    IlpInstance inst;
    const std::string dir = j.at("direction").get<std::string>();
    if (dir == "minimize") inst.direction = Direction::Minimize;
    else if (dir == "maximize") inst.direction = Direction::Maximize;
    else throw ParseError("unknown direction '" + dir + "'");
    inst.num_vars = j.at("num_vars").get<std::int32_t>();
    inst.objective = j.at("objective").get<std::vector<double>>();
    for (const auto& r : j.at("constraints")) {
      Constraint row;
      row.cols = r.at("cols").get<std::vector<std::int32_t>>();
      row.coefs = r.at("coefs").get<std::vector<double>>();
      row.sense = sense_from_string(r.at("sense").get<std::string>());
      row.rhs = r.at("rhs").get<double>();
      inst.constraints.push_back(std::move(row));
    }
    try {
      inst.validate();
    } catch (const Error& e) {
      throw ParseError(std::string("invalid instance: ") + e.what());
    }
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("canonical schema error: ") + e.what());
  }
}

void write_mps(const IlpInstance& instance, const std::string& path,
               const std::vector<std::optional<std::uint8_t>>& fixed, const std::string& name) {
  instance.validate();
  if (!fixed.empty() && fixed.size() != static_cast<std::size_t>(instance.num_vars))
    throw DimensionError("fixed vector length does not match instance");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  char line[256];

  out << "NAME          " << name << "\n";
  out << "OBJSENSE\n    " << (instance.direction == Direction::Maximize ? "MAX" : "MIN") << "\n";
  out << "ROWS\n";
  out << " N  COST\n";
  for (std::int32_t j = 0; j < instance.num_cons(); ++j) {
    char sense = 'G';
    if (instance.constraints[j].sense == Sense::Le) sense = 'L';
    if (instance.constraints[j].sense == Sense::Eq) sense = 'E';
    std::snprintf(line, sizeof(line), " %c  r%d\n", sense, j);
    out << line;
  }

  // Column-major entries: objective first, then rows in index order.
  std::vector<std::vector<std::pair<std::int32_t, double>>> col_entries(
      static_cast<std::size_t>(instance.num_vars));
  for (std::int32_t j = 0; j < instance.num_cons(); ++j) {
    const auto& row = instance.constraints[j];
    for (std::size_t k = 0; k < row.cols.size(); ++k)
      col_entries[row.cols[k]].push_back({j, row.coefs[k]});
  }

  out << "COLUMNS\n";
  out << "    MARKER                 'MARKER'                 'INTORG'\n";
  for (std::int32_t i = 0; i < instance.num_vars; ++i) {
    std::string col = "x" + std::to_string(i);
    std::vector<std::pair<std::string, double>> entries;
    if (instance.objective[i] != 0.0 || col_entries[i].empty())
      entries.push_back({"COST", instance.objective[i]});
    for (const auto& [row, coef] : col_entries[i])
      entries.push_back({"r" + std::to_string(row), coef});
    for (std::size_t k = 0; k < entries.size(); k += 2) {
      if (k + 1 < entries.size())
        std::snprintf(line, sizeof(line), "    %-10s%-10s%-12s  %-10s%-12s\n", col.c_str(),
                      entries[k].first.c_str(), mps_value(entries[k].second).c_str(),
                      entries[k + 1].first.c_str(), mps_value(entries[k + 1].second).c_str());
      else
        std::snprintf(line, sizeof(line), "    %-10s%-10s%-12s\n", col.c_str(),
                      entries[k].first.c_str(), mps_value(entries[k].second).c_str());
      out << line;
    }
  }
  out << "    MARKER                 'MARKER'                 'INTEND'\n";

  out << "RHS\n";
  for (std::int32_t j = 0; j < instance.num_cons(); ++j) {
    if (instance.constraints[j].rhs == 0.0) continue;
    std::snprintf(line, sizeof(line), "    RHS       r%-8d%-12s\n", j,
                  mps_value(instance.constraints[j].rhs).c_str());
    out << line;
  }

  out << "BOUNDS\n";
  for (std::int32_t i = 0; i < instance.num_vars; ++i) {
    if (!fixed.empty() && fixed[i].has_value()) {
      std::snprintf(line, sizeof(line), " FX BND       x%-8d%-12s\n", i,
                    mps_value(static_cast<double>(*fixed[i])).c_str());
    } else {
      std::snprintf(line, sizeof(line), " UP BND       x%-8d%-12s\n", i, mps_value(1.0).c_str());
    }
    out << line;
  }
  out << "ENDATA\n";
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) tokens.push_back(t);
  return tokens;
}

double parse_mps_value(const std::string& token, long line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad numeric value '" + token + "'", line_no);
  }
}

}  // namespace

MpsModel read_mps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  MpsModel model;
  IlpInstance& inst = model.instance;
  enum class Section { None, Objsense, Rows, Columns, Rhs, Bounds, Done };
  Section section = Section::None;

  std::map<std::string, std::int32_t> row_index;
  std::map<std::string, std::int32_t> col_index;
  std::string obj_row_name;
  bool in_integer_block = false;
  bool saw_continuous_column = false;
  std::vector<double> lower, upper;  // parsed bounds, validated at the end

  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.empty() || raw[0] == '*') continue;
    const bool header = raw[0] != ' ' && raw[0] != '\t';
    auto tokens = tokenize(raw);
    if (tokens.empty()) continue;

    if (header) {
      const std::string& key = tokens[0];
      if (key == "NAME") {
        if (tokens.size() > 1) model.name = tokens[1];
      } else if (key == "OBJSENSE") {
        section = Section::Objsense;
      } else if (key == "ROWS") {
        section = Section::Rows;
      } else if (key == "COLUMNS") {
        section = Section::Columns;
      } else if (key == "RHS") {
        section = Section::Rhs;
      } else if (key == "BOUNDS") {
        section = Section::Bounds;
      } else if (key == "RANGES") {
        throw ParseError("RANGES section not supported", line_no);
      } else if (key == "ENDATA") {
        section = Section::Done;
        break;
      } else {
        throw ParseError("unknown MPS section '" + key + "'", line_no);
      }
      continue;
    }

    switch (section) {
      case Section::Objsense: {
        if (tokens[0] == "MAX" || tokens[0] == "MAXIMIZE") inst.direction = Direction::Maximize;
        else if (tokens[0] == "MIN" || tokens[0] == "MINIMIZE") inst.direction = Direction::Minimize;
        else throw ParseError("bad OBJSENSE '" + tokens[0] + "'", line_no);
        break;
      }
      case Section::Rows: {
        if (tokens.size() != 2) throw ParseError("ROWS entries need 'type name'", line_no);
        const std::string& type = tokens[0];
        const std::string& name = tokens[1];
        if (type == "N") {
          if (!obj_row_name.empty()) throw ParseError("multiple objective rows", line_no);
          obj_row_name = name;
        } else {
          Constraint row;
          if (type == "G") row.sense = Sense::Ge;
          else if (type == "L") row.sense = Sense::Le;
          else if (type == "E") row.sense = Sense::Eq;
          else throw ParseError("unknown row type '" + type + "'", line_no);
          if (!row_index.emplace(name, inst.num_cons()).second)
            throw ParseError("duplicate row '" + name + "'", line_no);
          inst.constraints.push_back(std::move(row));
        }
        break;
      }
      case Section::Columns: {
        if (tokens.size() >= 3 && tokens[1] == "'MARKER'") {
          if (tokens[2] == "'INTORG'") in_integer_block = true;
          else if (tokens[2] == "'INTEND'") in_integer_block = false;
          else throw ParseError("unknown marker '" + tokens[2] + "'", line_no);
          break;
        }
        if (tokens.size() != 3 && tokens.size() != 5)
          throw ParseError("COLUMNS entries need 'col row value [row value]'", line_no);
        const std::string& col = tokens[0];
        auto it = col_index.find(col);
        if (it == col_index.end()) {
          if (!in_integer_block) saw_continuous_column = true;
          it = col_index.emplace(col, inst.num_vars).first;
          ++inst.num_vars;
          inst.objective.push_back(0.0);
          lower.push_back(0.0);
          upper.push_back(1.0);
        }
        const std::int32_t ci = it->second;
        for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
          const std::string& row_name = tokens[k];
          const double value = parse_mps_value(tokens[k + 1], line_no);
          if (row_name == obj_row_name) {
            inst.objective[ci] = value;
          } else {
            auto rit = row_index.find(row_name);
            if (rit == row_index.end())
              throw ParseError("entry references undeclared row '" + row_name + "'", line_no);
            inst.constraints[rit->second].cols.push_back(ci);
            inst.constraints[rit->second].coefs.push_back(value);
          }
        }
        break;
      }
      case Section::Rhs: {
        if (tokens.size() != 3 && tokens.size() != 5)
          throw ParseError("RHS entries need 'name row value [row value]'", line_no);
        for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
          auto rit = row_index.find(tokens[k]);
          if (rit == row_index.end())
            throw ParseError("RHS references undeclared row '" + tokens[k] + "'", line_no);
          inst.constraints[rit->second].rhs = parse_mps_value(tokens[k + 1], line_no);
        }
        break;
      }
      case Section::Bounds: {
        if (tokens.size() < 3) throw ParseError("BOUNDS entries need 'type set col [value]'",
                                                line_no);
        const std::string& type = tokens[0];
        auto cit = col_index.find(tokens[2]);
        if (cit == col_index.end())
          throw ParseError("bound references undeclared column '" + tokens[2] + "'", line_no);
        const std::int32_t ci = cit->second;
        const double value = tokens.size() >= 4 ? parse_mps_value(tokens[3], line_no) : 0.0;
        if (type == "UP") upper[ci] = value;
        else if (type == "LO") lower[ci] = value;
        else if (type == "FX") { lower[ci] = value; upper[ci] = value; }
        else if (type == "BV") { lower[ci] = 0.0; upper[ci] = 1.0; }
        else throw ParseError("unsupported bound type '" + type + "'", line_no);
        break;
      }
      case Section::None:
      case Section::Done:
        throw ParseError("data before any section header", line_no);
    }
  }
  if (section != Section::Done) throw ParseError("missing ENDATA", line_no);
  if (obj_row_name.empty()) throw ParseError("missing objective (N) row");
  if (saw_continuous_column)
    throw UnsupportedDomainError("continuous columns are not supported (binary ILPs only)");
  if (inst.num_vars == 0) throw ParseError("no columns declared");

  model.fixed.assign(static_cast<std::size_t>(inst.num_vars), std::nullopt);
  for (std::int32_t i = 0; i < inst.num_vars; ++i) {
    const double lo = lower[i];
    const double up = upper[i];
    const bool lo_ok = lo == 0.0 || lo == 1.0;
    const bool up_ok = up == 0.0 || up == 1.0;
    if (!lo_ok || !up_ok || lo > up)
      throw UnsupportedDomainError("variable bounds [" + std::to_string(lo) + "," +
                                   std::to_string(up) + "] are not binary");
    if (lo == up) model.fixed[i] = static_cast<std::uint8_t>(lo);
  }
  try {
    inst.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("invalid MPS model: ") + e.what());
  }
  return model;
}

IlpInstance read_instance(const std::string& path, FileFormat format) {
  return format == FileFormat::Canonical ? read_canonical(path) : read_mps(path).instance;
}

void write_instance(const IlpInstance& instance, const std::string& path, FileFormat format) {
  if (format == FileFormat::Canonical) write_canonical(instance, path);
  else write_mps(instance, path);
}

}  // namespace hyplns
