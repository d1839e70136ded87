#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "divcurl/field.hpp"

namespace divcurl {

// Flat layouts, node order row-major with axis 1 fastest.
//
// CSV: a "# divcurl-field v1 dim=D n=N components=C" comment line, a header
// "x1,x2[,x3],c0[,c1...]", then one row per node.
//
// Binary: 8-byte magic "DCFIELD1", three little-endian int32 (dim, n,
// components), then each component's values as float64 in node order,
// component after component.

void write_csv(std::ostream& os, const ScalarField& f);
void write_csv(std::ostream& os, const VectorField& f);

void write_binary(std::ostream& os, const ScalarField& f);
void write_binary(std::ostream& os, const VectorField& f);

/// Reads a binary dump; a one-component dump comes back as its only entry.
std::vector<ScalarField> read_binary(std::istream& is);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

}  // namespace divcurl
