#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "landscape/error.hpp"
#include "landscape/io.hpp"

namespace landscape {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  if (res.ec != std::errc()) throw ConstructionError("cannot format number");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw ConstructionError("malformed number '" + text + "'");
  return value;
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) throw ConstructionError("table row has wrong width");
  rows.push_back(std::move(cells));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == name) return c;
  }
  throw LookupError("table has no column '" + name + "'");
}

void write_csv(std::ostream& out, const Table& table) {
  out << "# " << table.meta.dump() << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw ConstructionError("csv: missing '# {json}' metadata line");
  try {
    table.meta = Json::parse(line.substr(2));
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(std::string("csv: bad metadata: ") + e.what());
  }
  if (!std::getline(in, line)) throw ConstructionError("csv: missing header row");
  table.columns = split_commas(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.add_row(split_commas(line));
  }
  return table;
}

void write_json(std::ostream& out, const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::array();
    for (const auto& cell : row) {
      double v = 0.0;
      const char* end = cell.data() + cell.size();
      const auto res = std::from_chars(cell.data(), end, v);
      if (!cell.empty() && res.ec == std::errc() && res.ptr == end)
        r.push_back(v);
      else
        r.push_back(cell);
    }
    rows.push_back(std::move(r));
  }
  Json doc;
  doc["meta"] = table.meta;
  doc["columns"] = table.columns;
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

Json to_json(const GridSpec& spec) {
  return Json{{"z_min", spec.z_min},
              {"z_max", spec.z_max},
              {"delta", spec.delta},
              {"line_lo", spec.line_lo},
              {"line_hi", spec.line_hi}};
}

GridSpec grid_from_json(const Json& j) {
  try {
    GridSpec spec;
    spec.z_min = j.at("z_min").get<double>();
    spec.z_max = j.at("z_max").get<double>();
    spec.delta = j.at("delta").get<double>();
    spec.line_lo = j.at("line_lo").get<int>();
    spec.line_hi = j.at("line_hi").get<int>();
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(std::string("grid metadata: ") + e.what());
  }
}

Table field_table(const BrownianField& field) {
  Table t;
  t.meta["kind"] = "field";
  t.meta["spec"] = to_json(field.spec());
  t.meta["seed"] = field.seed();
  t.columns = {"line", "grid_index", "value"};
  const GridSpec& spec = field.spec();
  for (int k = spec.line_lo; k <= spec.line_hi; ++k) {
    const auto row = field.line(k);
    for (std::size_t i = 0; i < row.size(); ++i)
      t.rows.push_back({std::to_string(k), std::to_string(i), format_double(row[i])});
  }
  return t;
}

BrownianField field_from_table(const Table& table) {
  const GridSpec spec = grid_from_json(table.meta.at("spec"));
  const std::uint64_t seed = table.meta.value("seed", std::uint64_t{0});
  const std::size_t lc = table.column("line");
  const std::size_t ic = table.column("grid_index");
  const std::size_t vc = table.column("value");
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(spec.line_count()),
                                        std::vector<double>(spec.point_count()));
  std::vector<std::vector<bool>> seen(rows.size(), std::vector<bool>(spec.point_count()));
  for (const auto& r : table.rows) {
    const long k = std::stol(r[lc]);
    const unsigned long i = std::stoul(r[ic]);
    if (k < spec.line_lo || k > spec.line_hi || i >= spec.point_count())
      throw ConstructionError("field table: entry outside the grid");
    const auto row = static_cast<std::size_t>(k - spec.line_lo);
    rows[row][i] = parse_double(r[vc]);
    seen[row][i] = true;
  }
  for (const auto& row : seen) {
    for (bool b : row) {
      if (!b) throw ConstructionError("field table: missing grid values");
    }
  }
  return BrownianField::from_values(spec, rows, seed);
}

Table staircase_table(const Staircase& stair) {
  Table t;
  t.meta["kind"] = "staircase";
  t.columns = {"index", "z", "line"};
  const auto b = stair.breakpoints();
  // Row m is the point where the path enters line first + m (the last row is its end).
  for (std::size_t m = 0; m < b.size(); ++m) {
    const int line = std::min(stair.first_line() + static_cast<int>(m), stair.last_line());
    t.rows.push_back({std::to_string(m), format_double(b[m]), std::to_string(line)});
  }
  return t;
}

Staircase staircase_from_table(const Table& table) {
  const std::size_t zc = table.column("z");
  const std::size_t lc = table.column("line");
  if (table.rows.size() < 2) throw ConstructionError("staircase table: too few rows");
  std::vector<double> b;
  for (const auto& r : table.rows) b.push_back(parse_double(r[zc]));
  return Staircase(std::stoi(table.rows.front()[lc]), std::move(b));
}

Table planar_table(const PlanarPath& path) {
  Table t;
  t.meta["kind"] = "planar_path";
  t.columns = {"index", "z", "r"};
  const auto v = path.vertices();
  for (std::size_t m = 0; m < v.size(); ++m)
    t.rows.push_back({std::to_string(m), format_double(v[m].z), format_double(v[m].r)});
  return t;
}

Table profile_table(const PassageProfile& profile) {
  Table t;
  t.meta["kind"] = "passage_profile";
  t.meta["spec"] = to_json(profile.spec);
  t.meta["start"] = {{"z", profile.start.z}, {"k", profile.start.k}};
  t.meta["target_line"] = profile.target_line;
  t.columns = {"y", "M", "backptr_left", "backptr_right"};
  for (std::size_t c = 0; c < profile.width(); ++c) {
    std::string left = format_double(profile.start.z);
    std::string right = left;
    if (profile.target_line > profile.start.k) {
      left = format_double(profile.y(
          static_cast<std::size_t>(profile.backptr(Side::left, profile.target_line, c))));
      right = format_double(profile.y(
          static_cast<std::size_t>(profile.backptr(Side::right, profile.target_line, c))));
    }
    t.rows.push_back({format_double(profile.y(c)), format_double(profile.values[c]), left, right});
  }
  return t;
}

}  // namespace landscape
