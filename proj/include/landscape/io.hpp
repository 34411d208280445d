#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "landscape/environment.hpp"
#include "landscape/lpp.hpp"
#include "landscape/planar_path.hpp"

namespace landscape {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);
/// Inverse of format_double; throws ConstructionError on malformed text.
double parse_double(const std::string& text);

/// A table with a JSON metadata header. Cells are stored as text so numeric
/// columns keep their exact round-trip representation.
struct Table {
  Json meta = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
  std::size_t column(const std::string& name) const;
};

/// CSV with a first line "# {json}" followed by the header row.
void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

/// {"meta": ..., "columns": [...], "rows": [[...], ...]} with numbers emitted
/// as JSON numbers where the cell parses as one.
void write_json(std::ostream& out, const Table& table);

Json to_json(const GridSpec& spec);
GridSpec grid_from_json(const Json& j);

/// Columns line, grid_index, value; metadata carries the spec and seed.
Table field_table(const BrownianField& field);
BrownianField field_from_table(const Table& table);

/// Columns index, z, line.
Table staircase_table(const Staircase& stair);
Staircase staircase_from_table(const Table& table);

/// Columns index, z, r.
Table planar_table(const PlanarPath& path);

/// Columns y, M, backptr_left, backptr_right: the last two are the grid
/// positions where the extremal maximizers to y enter the target line.
Table profile_table(const PassageProfile& profile);

}  // namespace landscape
