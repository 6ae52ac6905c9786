#include "qsemi/cli.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qsemi/classify.hpp"
#include "qsemi/io.hpp"

namespace qsemi {

namespace {

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 42;
  int starts = 64;
  bool json = false;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json axioms_json(const AxiomReport& ar) {
  Json j;
  j["unitality"] = ar.unitality;
  j["star"] = ar.star;
  j["multiplicativity"] = ar.multiplicativity;
  j["coassociativity"] = ar.coassociativity;
  return j;
}

Json cancellation_json(const CancellationReport& cr) {
  Json j;
  j["proper_left"] = cr.proper_left;
  j["proper_right"] = cr.proper_right;
  j["rank_left"] = cr.rank_left;
  j["rank_right"] = cr.rank_right;
  j["weak"] = cr.weak;
  return j;
}

Json condition_json(const ConditionResult& c) {
  Json j;
  j["holds"] = c.holds;
  j["residual"] = c.residual;
  return j;
}

// Commands that need a valid algebra: axiom failure is a verification
// failure (exit 2), carried by the AxiomError from make_quantum_semigroup.
QuantumSemigroup load_verified_algebra(const std::string& path, const Options& o,
                                       std::string& name) {
  const Json j = load_json(path);
  ParsedAlgebra pa = algebra_from_json(j);
  name = pa.name;
  return make_quantum_semigroup(pa.str, pa.delta, std::max(o.tol, 1e-9));
}

Functional load_state(const std::string& path, const StructureRef& s) {
  const Json j = load_json(path);
  return state_from_json(j, s);
}

int cmd_verify(const std::string& path, const Options& o, std::ostream& out) {
  const Json j = load_json(path);
  const ParsedAlgebra pa = algebra_from_json(j);
  const AxiomReport ar = verify_quantum_semigroup(pa.str, pa.delta);
  QuantumSemigroup qs{pa.str, make_comultiplication(pa.str, pa.delta), ar};
  const CancellationReport cr = cancellation_check(qs, std::max(o.tol, 1e-12), o.seed);
  // cancellation is a property, not an axiom: it is reported but does not
  // fail verification (left-zero style algebras are legitimate)
  const bool pass = ar.pass(o.tol);
  if (o.json) {
    Json rep;
    rep["version"] = "1";
    rep["kind"] = "report";
    rep["command"] = "verify";
    rep["name"] = pa.name;
    rep["pass"] = pass;
    rep["axioms"] = axioms_json(ar);
    rep["cancellation"] = cancellation_json(cr);
    emit(out, rep);
  } else {
    out << "algebra " << pa.name << ": axioms " << (pass ? "pass" : "FAIL")
        << " (unitality " << fmt(ar.unitality) << ", star " << fmt(ar.star)
        << ", multiplicativity " << fmt(ar.multiplicativity) << ", coassociativity "
        << fmt(ar.coassociativity) << ")\n";
    out << "cancellation: left " << (cr.proper_left ? "proper" : "IMPROPER") << " (rank "
        << cr.rank_left << "), right " << (cr.proper_right ? "proper" : "IMPROPER")
        << " (rank " << cr.rank_right << ")\n";
  }
  return pass ? 0 : 2;
}

int cmd_idempotents(const std::string& path, const std::string& prefix, const Options& o,
                    std::ostream& out) {
  std::string name;
  const QuantumSemigroup qs = load_verified_algebra(path, o, name);
  SolverConfig cfg;
  cfg.starts = o.starts;
  cfg.seed = o.seed;
  cfg.eps_idem = o.tol;
  const auto found = find_idempotents(qs, cfg);

  Json states = Json::array();
  for (size_t i = 0; i < found.size(); ++i) {
    std::ostringstream file;
    file << prefix << std::setw(2) << std::setfill('0') << i << ".json";
    save_json(file.str(), state_to_json(name, found[i].state));
    Json s;
    s["file"] = file.str();
    s["residual"] = found[i].residual;
    s["provenance"] = provenance_name(found[i].provenance);
    states.push_back(std::move(s));
  }

  if (o.json) {
    Json rep;
    rep["version"] = "1";
    rep["kind"] = "report";
    rep["command"] = "idempotents";
    rep["name"] = name;
    rep["starts"] = o.starts;
    rep["seed"] = o.seed;
    rep["tol"] = o.tol;
    rep["complete"] = false;  // multi-start search, best effort by design
    rep["count"] = found.size();
    rep["states"] = states;
    emit(out, rep);
  } else {
    out << "algebra " << name << ": found " << found.size()
        << " idempotent state(s) [starts " << o.starts << ", seed " << o.seed
        << "; search is best-effort, completeness not guaranteed]\n";
    for (size_t i = 0; i < found.size(); ++i)
      out << "  " << states[i]["file"].get<std::string>() << "  residual "
          << fmt(found[i].residual) << "  (" << provenance_name(found[i].provenance) << ")\n";
  }
  return 0;
}

int cmd_classify(const std::string& apath, const std::string& spath, const Options& o,
                 std::ostream& out, std::ostream& err) {
  std::string name;
  const QuantumSemigroup qs = load_verified_algebra(apath, o, name);
  const Functional omega = load_state(spath, qs.str);
  if (!check_state(omega, 1e-8).is_state) {
    err << "error: the density is not a state\n";
    return 2;
  }
  const double idem_res = idempotency_residual(qs, omega);
  if (idem_res > 1e-6) {
    err << "error: state is not idempotent (residual " << fmt(idem_res) << ")\n";
    return 2;
  }
  const ClassificationReport rep = haar_type_report(qs, omega, o.tol);

  if (o.json) {
    Json j;
    j["version"] = "1";
    j["kind"] = "report";
    j["command"] = "classify";
    j["name"] = name;
    j["idempotency_residual"] = idem_res;
    j["ideal_two_sided"] = condition_json(rep.ideal_two_sided);
    j["central_support"] = condition_json(rep.central_support);
    j["compression_homomorphism"] = condition_json(rep.compression_homomorphism);
    j["corner_quantum_group"] = condition_json(rep.corner_quantum_group);
    j["haar_type"] = condition_json(rep.haar_type);
    j["agreement"] = rep.agreement;
    j["is_tracial"] = rep.is_tracial;
    j["support_ranks"] = rep.support_ranks;
    j["left_kernel_dim"] = rep.left_kernel_dim;
    emit(out, j);
  } else {
    auto line = [&](const char* label, const ConditionResult& c) {
      out << "  " << label << ": " << (c.holds ? "holds" : "fails") << " (residual "
          << fmt(c.residual) << ")\n";
    };
    out << "state on " << name << " (idempotency residual " << fmt(idem_res) << "):\n";
    line("left kernel two-sided", rep.ideal_two_sided);
    line("support central      ", rep.central_support);
    line("compression *-hom    ", rep.compression_homomorphism);
    line("corner quantum group ", rep.corner_quantum_group);
    line("Haar type            ", rep.haar_type);
    out << "  support ranks: [";
    for (size_t i = 0; i < rep.support_ranks.size(); ++i)
      out << (i ? "," : "") << rep.support_ranks[i];
    out << "]  tracial: " << (rep.is_tracial ? "yes" : "no") << "\n";
  }

  if (!rep.agreement) {
    err << "error: the five equivalent conditions disagree; numerical trouble\n";
    return 2;
  }
  return rep.haar_type.holds ? 0 : 3;
}

int cmd_hypergroup(const std::string& apath, const std::string& spath,
                   const std::string& outfile, const Options& o, std::ostream& out,
                   std::ostream& err) {
  std::string name;
  const QuantumSemigroup qs = load_verified_algebra(apath, o, name);
  const Functional omega = load_state(spath, qs.str);
  if (!check_state(omega, 1e-8).is_state) {
    err << "error: the density is not a state\n";
    return 2;
  }
  const ProtoHypergroup h = build_hypergroup(qs, omega, std::max(o.tol, 1e-9));
  const HypergroupReport hr = verify_hypergroup(h, o.tol);
  save_json(outfile, hypergroup_to_json(name, h));
  const bool pass = hr.pass(std::max(o.tol, 1e-9));

  if (o.json) {
    Json j;
    j["version"] = "1";
    j["kind"] = "report";
    j["command"] = "hypergroup";
    j["name"] = name;
    j["out"] = outfile;
    j["corner_blocks"] = h.system.corner->blocks();
    j["pass"] = pass;
    j["support_identity"] = hr.support_identity;
    j["compression_invariance"] = hr.compression_invariance;
    j["unitality"] = hr.unitality;
    j["coassociativity"] = hr.coassociativity;
    j["choi_margin"] = hr.choi_margin;
    j["left_invariance"] = hr.left_invariance;
    j["right_invariance"] = hr.right_invariance;
    j["faithfulness_margin"] = hr.faithfulness_margin;
    j["invariance_nullity"] = hr.invariance_nullity;
    j["compact_witness"] = hr.compact_witness;
    emit(out, j);
  } else {
    out << "hypergroup on " << name << " -> " << outfile << " (corner dim " << h.dim()
        << "): " << (pass ? "pass" : "FAIL") << "\n"
        << "  max residual " << fmt(hr.max_residual()) << ", Choi margin "
        << fmt(hr.choi_margin) << ", faithfulness " << fmt(hr.faithfulness_margin)
        << ", invariant functionals " << hr.invariance_nullity << "\n";
  }
  return pass ? 0 : 2;
}

int cmd_catalog(const std::string& req, const std::string& outfile, const Options& o,
                std::ostream& out) {
  QuantumSemigroup qs = [&] {
    try {
      return build_catalog(req, 1e-12);
    } catch (const InvalidInput& e) {
      // unknown name or bad size: a usage error, not a math failure
      throw SchemaError(e.what());
    }
  }();
  const std::string file = outfile.empty() ? req + ".json" : outfile;
  save_json(file, algebra_to_json(req, qs));
  if (o.json) {
    Json j;
    j["version"] = "1";
    j["kind"] = "report";
    j["command"] = "catalog";
    j["name"] = req;
    j["out"] = file;
    j["blocks"] = qs.str->blocks();
    j["dim"] = qs.dim();
    emit(out, j);
  } else {
    out << "wrote " << file << ": dim " << qs.dim() << ", blocks [";
    const auto& blocks = qs.str->blocks();
    for (size_t i = 0; i < blocks.size(); ++i) out << (i ? "," : "") << blocks[i];
    out << "]\n";
  }
  return 0;
}

int cmd_classical(const std::string& path, const Options& o, std::ostream& out) {
  const Json j = load_json(path);
  const MultiplicationTable t = table_from_json(j);
  try {
    validate_table(t);
  } catch (const InvalidInput& e) {
    throw SchemaError(e.what());  // bad table data in the file
  }
  const ClassicalCancellation cc = classical_cancellation(t);

  // degenerate multiplications admit a continuum of idempotent measures;
  // enumeration is meaningless there, so report the structure instead
  bool left_zero = true, right_zero = true;
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y) {
      left_zero &= t.at(x, y) == x;
      right_zero &= t.at(x, y) == y;
    }
  const bool continuum = left_zero || right_zero;

  SolverConfig cfg;
  cfg.starts = o.starts;
  cfg.seed = o.seed;
  cfg.eps_idem = o.tol;
  ClassicalIdempotents idem;
  if (!continuum) idem = classical_idempotent_oracle(t, cfg);

  if (o.json) {
    Json rep;
    rep["version"] = "1";
    rep["kind"] = "report";
    rep["command"] = "classical";
    rep["n"] = t.n;
    rep["group"] = is_group(t);
    rep["cancellation"] = Json{{"left", cc.left}, {"right", cc.right}};
    if (continuum) {
      rep["idempotent_continuum"] = true;
    } else {
      rep["complete"] = idem.complete;
      Json measures = Json::array();
      for (const RealVector& q : idem.measures) {
        Json m = Json::array();
        for (Eigen::Index i = 0; i < q.size(); ++i) m.push_back(q[i]);
        measures.push_back(std::move(m));
      }
      rep["idempotent_measures"] = measures;
    }
    emit(out, rep);
  } else {
    out << "semigroup on " << t.n << " element(s): cancellation left "
        << (cc.left ? "yes" : "no") << ", right " << (cc.right ? "yes" : "no") << "\n";
    if (continuum) {
      out << (left_zero ? "xy = x for all x,y: every probability measure is idempotent\n"
                        : "xy = y for all x,y: every probability measure is idempotent\n");
      return 0;
    }
    out << (idem.complete ? "idempotent measures (complete):"
                          : "idempotent measures (numeric, best effort):")
        << "\n";
    for (const RealVector& q : idem.measures) {
      out << "  [";
      for (Eigen::Index i = 0; i < q.size(); ++i)
        out << (i ? ", " : "") << std::setprecision(6) << q[i];
      out << "]\n";
    }
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"workbench for idempotent states on finite quantum semigroups"};
  app.name("qsemi");
  app.require_subcommand(1);

  Options o;
  app.add_option("--tol", o.tol, "numerical tolerance")
      ->envname("QSEMI_TOL")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--starts", o.starts, "solver starts")->capture_default_str();
  app.add_flag("--json", o.json, "machine-readable output");

  std::string algebra_path, state_path, table_path, catalog_name;
  std::string hyper_out = "hypergroup.json", catalog_out, out_prefix = "idempotent-";

  CLI::App* verify = app.add_subcommand("verify", "check the axioms and cancellation");
  verify->fallthrough();
  verify->add_option("algebra", algebra_path, "algebra file")->required();

  CLI::App* idem = app.add_subcommand("idempotents", "search for idempotent states");
  idem->fallthrough();
  idem->add_option("algebra", algebra_path, "algebra file")->required();
  idem->add_option("--out", out_prefix, "output file prefix")->capture_default_str();

  CLI::App* classify = app.add_subcommand("classify", "five-condition Haar-type report");
  classify->fallthrough();
  classify->add_option("algebra", algebra_path, "algebra file")->required();
  classify->add_option("state", state_path, "state file")->required();

  CLI::App* hyper = app.add_subcommand("hypergroup", "compress by an idempotent state");
  hyper->fallthrough();
  hyper->add_option("algebra", algebra_path, "algebra file")->required();
  hyper->add_option("state", state_path, "state file")->required();
  hyper->add_option("--out", hyper_out, "output file")->capture_default_str();

  CLI::App* catalog = app.add_subcommand("catalog", "write a testbed algebra");
  catalog->fallthrough();
  catalog->add_option("name", catalog_name, "catalog name, see below")->required();
  catalog->add_option("--out", catalog_out, "output file (default <name>.json)");
  {
    std::string names;
    for (const std::string& n : catalog_names()) names += (names.empty() ? "" : ", ") + n;
    catalog->footer("names: " + names);
  }

  CLI::App* classical = app.add_subcommand("classical", "cancellation and idempotent measures");
  classical->fallthrough();
  classical->add_option("table", table_path, "multiplication table file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));

    if (app.got_subcommand(verify)) return cmd_verify(algebra_path, o, out);
    if (app.got_subcommand(idem)) return cmd_idempotents(algebra_path, out_prefix, o, out);
    if (app.got_subcommand(classify))
      return cmd_classify(algebra_path, state_path, o, out, err);
    if (app.got_subcommand(hyper))
      return cmd_hypergroup(algebra_path, state_path, hyper_out, o, out, err);
    if (app.got_subcommand(catalog)) return cmd_catalog(catalog_name, catalog_out, o, out);
    if (app.got_subcommand(classical)) return cmd_classical(table_path, o, out);
    err << "error: no subcommand\n";
    return 1;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const HypothesisError& e) {
    err << "error: hypothesis '" << hypothesis_name(e.which) << "' failed (residual "
        << fmt(e.residual) << "): " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qsemi
