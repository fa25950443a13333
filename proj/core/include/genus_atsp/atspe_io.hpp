#ifndef GENUS_ATSP_ATSPE_IO_HPP
#define GENUS_ATSP_ATSPE_IO_HPP

#include <iosfwd>
#include <string>

#include "genus_atsp/digraph.hpp"

namespace genus_atsp {

// ATSPE-1 instance format (text, whitespace separated, # starts a comment,
// sections in any order):
//   atspe 1
//   vertices <n>
//   arc <id> <tail> <head> <cost>
//   edge <id> <arc_id|-> <arc_id|->     first arc runs end0 -> end1
//   rot <vertex> <end>...               end token: <edge_id>.<0|1>
//   sig <edge_id> <+1|-1>               omitted edges default to +1
EmbeddedDigraph parse_atspe(std::istream& in);
EmbeddedDigraph parse_atspe_string(const std::string& text);
EmbeddedDigraph load_atspe_file(const std::string& path);

// Canonical writer: sections in fixed order, ids ascending, integral costs
// printed as integers. parse(write(g)) == g and re-writing is byte-stable.
void write_atspe(std::ostream& out, const EmbeddedDigraph& g);
std::string write_atspe_string(const EmbeddedDigraph& g);
void save_atspe_file(const std::string& path, const EmbeddedDigraph& g);

}  // namespace genus_atsp

#endif
