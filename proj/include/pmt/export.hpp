#pragma once

// JSON and DOT output, .lat input, and the theory report shared by the CLI
// and the tests.

#include <string>
#include <vector>

#include <json.hpp>

#include "pmt/dlattice.hpp"
#include "pmt/spectrum.hpp"
#include "pmt/theory_file.hpp"
#include "pmt/typespace.hpp"

namespace pmt::io {

using Json = nlohmann::ordered_json;

Json lattice_json(const lattice::DLattice &L);
/// Hasse diagram, bottom at the bottom.
std::string lattice_dot(const lattice::DLattice &L, const std::string &name);

/// Reads the .lat format: either explicit tables
///   {"labels": [...], "meet": [[...]], "join": [[...]], "bottom": i, "top": j}
/// or a generated family
///   {"family": {"carriers": [k, ...], "generators": ["0101", ...]}}.
/// Malformed JSON raises ParseError; bad tables raise LatticeError.
lattice::DLattice lattice_from_json(const std::string &text);

Json space_json(const spectrum::SpectralSpace &s);
/// Specialisation order as a DAG (edges from a point to the points in its
/// closure that it covers), generic points doubled and filled, one cluster
/// per irreducible component holding its generic point.
std::string space_dot(const spectrum::SpectralSpace &s, const std::string &name);
std::string space_text(const spectrum::SpectralSpace &s);

Json structure_json(const semantics::FiniteStructure &m);

struct ReportInput {
  const dsl::TheoryBlock *block;
  const typespace::TheoryContext *ctx;
};

Json theory_report_json(const ReportInput &in);
std::string theory_report_text(const ReportInput &in);
std::string theory_report_dot(const ReportInput &in);

struct InterpretationReport {
  std::string name, source, target;
  bool verified = false;
  typespace::NaturalIso iso;
};
Json interpretation_json(const InterpretationReport &r);
std::string interpretation_text(const InterpretationReport &r);

}  // namespace pmt::io
