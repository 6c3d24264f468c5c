// pmt: command-line front end of the workbench.
//
//   pmt report FILE.pmt   [--theory NAME] [--nmax N] [--budget V] [--format text|json|dot] [-o PATH]
//   pmt spectrum FILE.lat [--format json|dot|text] [-o PATH]
//   pmt omit FILE.pmt --target NAME... [--theory NAME] [--max-model-size K]
//
// Exit codes: 0 ok, 1 other failure, 2 parse error, 3 element cap exceeded,
// 4 lattice validation failure, 5 supported omission target.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pmt/export.hpp"
#include "pmt/interpretation.hpp"
#include "pmt/semantics.hpp"
#include "pmt/theory_file.hpp"
#include "pmt/typespace.hpp"

namespace {

struct RunConfig {
  std::string input;
  std::size_t n_max = 2;
  std::size_t budget = 2;
  std::size_t max_model_size = 4;
  std::size_t cap = pmt::lattice::kDefaultElementCap;
  std::string format;
  std::string output;
  std::string theory;
  std::vector<std::string> targets;
};

enum Exit { kOk = 0, kOther = 1, kParse = 2, kCap = 3, kLattice = 4, kSupported = 5 };

void emit(const RunConfig &cfg, const std::string &text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw pmt::Error("cannot write " + cfg.output);
  out << text;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pmt::Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

pmt::typespace::BuildOptions build_options(const RunConfig &cfg) {
  pmt::typespace::BuildOptions o;
  o.n_max = cfg.n_max;
  o.budget = cfg.budget;
  o.cap = cfg.cap;
  return o;
}

std::vector<const pmt::dsl::TheoryBlock *> selected(const pmt::dsl::TheoryFile &f, const std::string &name) {
  std::vector<const pmt::dsl::TheoryBlock *> out;
  if (!name.empty()) {
    out.push_back(&f.theory(name));
    return out;
  }
  for (const auto &t : f.theories) out.push_back(&t);
  return out;
}

int cmd_report(const RunConfig &cfg) {
  using pmt::io::Json;
  auto file = pmt::dsl::load_theory_file(cfg.input);
  auto blocks = selected(file, cfg.theory);
  std::map<std::string, pmt::typespace::TheoryContext> contexts;
  for (const auto &t : file.theories)
    contexts.emplace(t.name, pmt::typespace::build(t.cls, build_options(cfg)));

  std::vector<pmt::io::InterpretationReport> interps;
  if (cfg.theory.empty())
    for (const auto &d : file.interpretations) {
      pmt::io::InterpretationReport r{d.name, d.source, d.target, false, {}};
      const auto &src = contexts.at(d.source);
      const auto &tgt = contexts.at(d.target);
      r.verified = pmt::typespace::verify_interpretation(d.interpretation, tgt.cls, src.cls.axioms);
      r.iso = pmt::typespace::natural_iso_check(d.interpretation, src, tgt);
      interps.push_back(std::move(r));
    }

  std::string fmt = cfg.format.empty() ? "text" : cfg.format;
  std::string out;
  if (fmt == "json") {
    Json j;
    j["input"] = cfg.input;
    Json ts = Json::array();
    for (const auto *b : blocks) ts.push_back(pmt::io::theory_report_json({b, &contexts.at(b->name)}));
    j["theories"] = ts;
    Json is = Json::array();
    for (const auto &r : interps) is.push_back(pmt::io::interpretation_json(r));
    j["interpretations"] = is;
    out = j.dump(2) + "\n";
  } else if (fmt == "dot") {
    for (const auto *b : blocks) out += pmt::io::theory_report_dot({b, &contexts.at(b->name)});
  } else {
    for (const auto *b : blocks) out += pmt::io::theory_report_text({b, &contexts.at(b->name)});
    for (const auto &r : interps) out += pmt::io::interpretation_text(r);
  }
  emit(cfg, out);
  return kOk;
}

int cmd_spectrum(const RunConfig &cfg) {
  auto L = std::make_shared<const pmt::lattice::DLattice>(pmt::io::lattice_from_json(read_file(cfg.input)));
  auto s = pmt::spectrum::spec(L);
  std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  if (fmt == "dot") {
    emit(cfg, pmt::io::space_dot(s, "spectrum"));
  } else if (fmt == "text") {
    emit(cfg, pmt::io::space_text(s));
  } else {
    pmt::io::Json j;
    j["lattice"] = pmt::io::lattice_json(*L);
    j["space"] = pmt::io::space_json(s);
    emit(cfg, j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_omit(const RunConfig &cfg) {
  auto file = pmt::dsl::load_theory_file(cfg.input);
  const pmt::dsl::TheoryBlock *block = nullptr;
  if (!cfg.theory.empty()) {
    block = &file.theory(cfg.theory);
  } else if (file.theories.size() == 1) {
    block = &file.theories.front();
  } else {
    throw pmt::Error("the file declares several theories; choose one with --theory");
  }
  auto ctx = pmt::typespace::build(block->cls, build_options(cfg));
  std::vector<pmt::typespace::PiType> targets;
  for (const auto &name : cfg.targets) {
    const pmt::dsl::TypeDecl *decl = nullptr;
    for (const auto &t : block->types)
      if (t.name == name) decl = &t;
    if (!decl) throw pmt::Error("no type named '" + name + "' in theory " + block->name);
    targets.push_back(pmt::dsl::resolve_type(ctx, *decl));
  }
  std::optional<pmt::semantics::FiniteStructure> found;
  try {
    found = pmt::typespace::omitting_search(ctx, targets, cfg.max_model_size);
  } catch (const pmt::typespace::SupportedTarget &e) {
    std::cerr << "pmt: target " << cfg.targets[e.target()] << " has support " << e.formula() << "\n";
    return kSupported;
  }
  std::string fmt = cfg.format.empty() ? "text" : cfg.format;
  if (fmt == "json") {
    pmt::io::Json j;
    j["theory"] = block->name;
    j["targets"] = cfg.targets;
    j["max_model_size"] = cfg.max_model_size;
    j["model"] = found ? pmt::io::structure_json(*found) : pmt::io::Json(nullptr);
    emit(cfg, j.dump(2) + "\n");
  } else if (found) {
    emit(cfg, pmt::semantics::to_dsl(*found) + "\n");
  } else {
    emit(cfg, "not found within bound " + std::to_string(cfg.max_model_size) + "\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"positive model theory workbench"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char *env = std::getenv("PMT_ELEMENT_CAP")) {
    try {
      cfg.cap = std::stoul(env);
    } catch (const std::exception &) {
      std::cerr << "pmt: PMT_ELEMENT_CAP must be a number\n";
      return kOther;
    }
    if (cfg.cap < 2) {
      std::cerr << "pmt: PMT_ELEMENT_CAP must be at least 2\n";
      return kOther;
    }
  }

  auto common = [&](CLI::App *sub, const std::vector<std::string> &formats) {
    sub->add_option("-o,--output", cfg.output, "write the artifact here instead of standard output");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats));
  };
  auto theory_opts = [&](CLI::App *sub) {
    sub->add_option("input", cfg.input, ".pmt theory file")->required();
    sub->add_option("--nmax", cfg.n_max, "largest arity of the type spaces")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "quantified variables beyond nmax")->capture_default_str();
    sub->add_option("--max-model-size", cfg.max_model_size, "model search bound")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--theory", cfg.theory, "theory block to use");
  };

  auto *report = app.add_subcommand("report", "build a theory context and print the checks");
  theory_opts(report);
  common(report, {"text", "json", "dot"});
  auto *spectrum = app.add_subcommand("spectrum", "spectral space of a lattice file");
  spectrum->add_option("input", cfg.input, ".lat lattice file")->required();
  common(spectrum, {"json", "dot", "text"});
  auto *omit = app.add_subcommand("omit", "search for a positively closed model omitting Pi-types");
  theory_opts(omit);
  common(omit, {"text", "json"});
  omit->add_option("--target", cfg.targets, "declared type names to omit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kOk : kOther;
  }

  try {
    if (report->parsed()) return cmd_report(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (omit->parsed()) return cmd_omit(cfg);
  } catch (const pmt::ParseError &e) {
    std::cerr << cfg.input << (e.line() ? ":" : ": ") << e.what() << "\n";
    return kParse;
  } catch (const pmt::CapExceeded &e) {
    std::cerr << "pmt: " << e.what() << "\n";
    return kCap;
  } catch (const pmt::lattice::LatticeError &e) {
    std::cerr << "pmt: " << e.what() << "\n";
    return kLattice;
  } catch (const std::exception &e) {
    std::cerr << "pmt: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
