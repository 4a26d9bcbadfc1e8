#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddcech/bifiltered.hpp"
#include "ddcech/homology.hpp"
#include "ddcech/metric_space.hpp"

namespace ddcech {

enum class InputKind { kPoints, kMatrix };

struct Dataset {
  FiniteMetricSpace space;
  DiscreteMeasure measure;
};

// CSV with a header row, comma separated, no quoting. Blank lines and lines
// starting with '#' are skipped.
//
// Points: columns x and optionally y (default 0). Matrix: one numeric column
// per data row, in row order; "inf" is accepted. Both kinds accept a "label"
// column. Weights come from `weight_column` if given, else from a column named
// "w" if present, else every weight is 1. Throws ParseError with the line
// number, and the library errors of the metric and measure constructors.
Dataset read_dataset(std::istream& in, InputKind kind,
                     const std::optional<std::string>& weight_column = std::nullopt);
Dataset read_dataset_file(const std::filesystem::path& path, InputKind kind,
                          const std::optional<std::string>& weight_column = std::nullopt);

// Shortest text that reads back to the same double; "inf" for infinity.
std::string format_number(double x);
// Accepts what format_number writes. Throws ParseError(line, ...).
double parse_number(std::string_view text, std::size_t line);
// Comma separated list of numbers, e.g. "0,0.5,1".
std::vector<double> parse_number_list(std::string_view text);

// Staircase table:
//   ddcech-bifiltration 1
//   dim_cap <k>
//   universe <v> <v> ...
//   simplices <count>
//   <v> <v> ... | <r> <m> ; <r> <m> ; ...
// one simplex per line in simplex order.
void write_bifiltration(std::ostream& out, const BifilteredComplex& k);
BifilteredComplex read_bifiltration(std::istream& in);

// "m,r,b0,b1,...", rows in m order, then r order. Every cell is written.
void write_hilbert_csv(std::ostream& out, const BettiTable& t);
// Grid of cells for one degree, r to the right and m upward, with a legend.
void write_hilbert_svg(std::ostream& out, const BettiTable& t, std::size_t degree);

// One line per degree: "H<k>: [b,d) [b,d) ...".
void write_barcode(std::ostream& out, const Barcode& b);

// Chain complex C_{k+1} -> C_k -> C_{k-1} in firep style, with one generator
// per minimal grade of each simplex and grades written as (r, -m). Throws
// UnsupportedDimension if k + 1 exceeds the dim_cap of `k`.
void write_firep(std::ostream& out, const BifilteredComplex& complex, std::size_t degree);

// Writes to a temporary file next to `path` and renames it into place.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace ddcech
