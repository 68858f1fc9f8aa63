#include "riesz/field_io.hpp"

#include "riesz/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace riesz {

namespace {

using nlohmann::json;

constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};
constexpr std::array<const char*, 3> kSections{"u", "v", "w"};

std::string formatValue(double x) {
  // %.17g round-trips every double.
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json header(const Grid& g, FieldKind kind) {
  return {{"grid", {{"nx", g.nx()}, {"ny", g.ny()}, {"nz", g.nz()},
                    {"lx", g.lx()}, {"ly", g.ly()}, {"lz", g.lz()}}},
          {"kind", kind == FieldKind::Scalar ? "scalar" : "vector"}};
}

void writeValues(std::ostream& out, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    out << formatValue(v(i)) << '\n';
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  std::size_t number;
  std::string text;
};

double parseValue(const Line& line) {
  double x = 0.0;
  const char* first = line.text.data();
  const char* last = first + line.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line.number, "expected a number, got '" + line.text + "'");
  }
  if (!std::isfinite(x)) {
    throw ParseError(line.number, "non-finite value");
  }
  return x;
}

Grid parseGrid(const json& h, std::size_t lineNo) {
  try {
    const json& g = h.at("grid");
    return Grid(g.at("nx").get<Index>(), g.at("ny").get<Index>(), g.at("nz").get<Index>(),
                g.value("lx", 1.0), g.value("ly", 1.0), g.value("lz", 1.0));
  } catch (const json::exception& e) {
    throw ParseError(lineNo, std::string("bad grid header: ") + e.what());
  } catch (const InvalidGrid& e) {
    throw ParseError(lineNo, std::string("bad grid header: ") + e.what());
  }
}

}  // namespace

void writeField(std::ostream& out, const ScalarField& field) {
  out << header(field.grid(), FieldKind::Scalar).dump() << '\n';
  writeValues(out, field.values());
}

void writeField(std::ostream& out, const VectorField& field) {
  out << header(field.grid(), FieldKind::Vector).dump() << '\n';
  for (int a = 0; a < 3; ++a) {
    out << kSections[a] << '\n';
    writeValues(out, field.component(kAxes[a]));
  }
}

FieldData readField(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string t = trim(raw);
    if (!t.empty()) {
      lines.push_back({number, std::move(t)});
    }
  }
  if (lines.empty()) {
    throw ParseError(0, "empty field file");
  }

  json h;
  try {
    h = json::parse(lines.front().text);
  } catch (const json::exception& e) {
    throw ParseError(lines.front().number, std::string("header is not valid JSON: ") + e.what());
  }
  if (!h.is_object()) {
    throw ParseError(lines.front().number, "header must be a JSON object");
  }
  const Grid grid = parseGrid(h, lines.front().number);
  const std::string kind = h.value("kind", std::string());

  std::size_t pos = 1;
  const auto readBlock = [&](Index count, const char* what) {
    Vector v(count);
    for (Index i = 0; i < count; ++i) {
      if (pos >= lines.size()) {
        throw ParseError(number + 1, std::string("unexpected end of file in ") + what + " payload");
      }
      v(i) = parseValue(lines[pos++]);
    }
    return v;
  };

  if (kind == "scalar") {
    Vector values = readBlock(grid.cellCount(), "scalar");
    if (pos != lines.size()) {
      throw ParseError(lines[pos].number, "trailing data after scalar payload");
    }
    return ScalarField(grid, std::move(values));
  }
  if (kind == "vector") {
    std::array<Vector, 3> comps;
    for (int a = 0; a < 3; ++a) {
      if (pos >= lines.size()) {
        throw ParseError(number + 1, std::string("missing section '") + kSections[a] + "'");
      }
      if (lines[pos].text != kSections[a]) {
        throw ParseError(lines[pos].number, std::string("expected section '") + kSections[a] +
                                                "', got '" + lines[pos].text + "'");
      }
      ++pos;
      comps[a] = readBlock(grid.faceCount(kAxes[a]), kSections[a]);
    }
    if (pos != lines.size()) {
      throw ParseError(lines[pos].number, "trailing data after vector payload");
    }
    return VectorField(grid, std::move(comps[0]), std::move(comps[1]), std::move(comps[2]));
  }
  throw ParseError(lines.front().number, "header 'kind' must be \"scalar\" or \"vector\"");
}

FieldData readFieldFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open field file '" + path + "'");
  }
  return readField(in);
}

void writeFieldFile(const std::string& path, const FieldData& field) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write field file '" + path + "'");
  }
  std::visit([&out](const auto& f) { writeField(out, f); }, field);
  out.flush();
  if (!out) {
    throw Error("failed writing field file '" + path + "'");
  }
}

}  // namespace riesz
