#pragma once

// Field files: one line of JSON header, then CSV payload lines.
//
//   {"grid":{"nx":2,"ny":1,"nz":1,"lx":1,"ly":1,"lz":1},"kind":"scalar"}
//   0.25
//   -0.25
//
// Scalar payloads hold one value per line in row-major cell order. Vector
// payloads hold three sections, each introduced by a line containing just
// "u", "v" or "w", with one value per line in row-major face order,
// boundary faces included. Blank lines are ignored.

#include "riesz/grid.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace riesz {

enum class FieldKind { Scalar, Vector };

using FieldData = std::variant<ScalarField, VectorField>;

void writeField(std::ostream& out, const ScalarField& field);
void writeField(std::ostream& out, const VectorField& field);

/// Throws ParseError carrying the 1-based line number.
FieldData readField(std::istream& in);

FieldData readFieldFile(const std::string& path);
void writeFieldFile(const std::string& path, const FieldData& field);

}  // namespace riesz
