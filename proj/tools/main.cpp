#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "qq/boolfn.hpp"
#include "qq/catalog.hpp"
#include "qq/composers.hpp"
#include "qq/serialize.hpp"
#include "qq/state.hpp"
#include "qq/transforms.hpp"
#include "qq/verifier.hpp"
#include "report_tables.hpp"

namespace {

using namespace qq;

// --alg NAME picks a catalog algorithm, --file F loads a document.  --n is
// shorthand for the family parameter: --alg t2n-exact --n 3 is t2n-exact:6.
struct AlgSource {
  std::string alg;
  std::string file;
  int family_n = 0;
};

void add_source_options(CLI::App* cmd, AlgSource& src) {
  auto* alg = cmd->add_option(
      "--alg", src.alg, "catalog algorithm, e.g. equality3 or t2n-exact:6");
  auto* file =
      cmd->add_option("--file", src.file, "algorithm document to load");
  alg->excludes(file);
  file->excludes(alg);
  cmd->add_option("--n", src.family_n,
                  "family size n for t2n algorithms (2n variables)");
}

QueryAlgorithm resolve(const AlgSource& src) {
  if (!src.file.empty()) return load_algorithm(src.file).algorithm;
  if (src.alg.empty()) {
    throw std::invalid_argument("provide --alg NAME or --file PATH");
  }
  std::string ref = src.alg;
  if (src.family_n > 0 && ref.find(':') == std::string::npos) {
    ref += ":" + std::to_string(2 * src.family_n);
  }
  return catalog_build(ref);
}

// Function names accepted by verify --function: the named functions, the
// family functions T<2n>_EXACT / T<2n>_BOUNDED, and NOT(...) of any of
// these.
TruthTable resolve_function(const std::string& name) {
  if (name.size() > 5 && name.rfind("NOT(", 0) == 0 && name.back() == ')') {
    return complement(resolve_function(name.substr(4, name.size() - 5)));
  }
  if (name.size() > 1 && name[0] == 'T' &&
      std::isdigit(static_cast<unsigned char>(name[1]))) {
    std::size_t pos = 1;
    while (pos < name.size() &&
           std::isdigit(static_cast<unsigned char>(name[pos]))) {
      ++pos;
    }
    const int total = std::stoi(name.substr(1, pos - 1));
    const std::string suffix = name.substr(pos);
    if (total >= 2 && total % 2 == 0) {
      if (suffix == "_EXACT") return exact_family_function(total / 2);
      if (suffix == "_BOUNDED") return bounded_family_function(total / 2);
    }
  }
  return named_function(name);
}

std::string fmt_number(double v) {
  if (std::abs(v) <= kTolerance) v = 0.0;  // hide float noise, avoid "-0"
  std::ostringstream oss;
  oss << std::setprecision(10) << v;
  return oss.str();
}

std::string fmt_amp(const Amplitude& a) {
  if (std::abs(a.imag()) <= kTolerance) return fmt_number(a.real());
  return fmt_number(a.real()) + (a.imag() < 0 ? "-" : "+") +
         fmt_number(std::abs(a.imag())) + "i";
}

std::string fmt_state(const StateVector& state) {
  std::string out = "(";
  for (std::size_t i = 0; i < state.amps.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt_amp(state.amps[i]);
  }
  return out + ")";
}

std::string property_label(const PropertyClass& pc) {
  if (pc.property2plus && pc.property2minus) return "2+/2-";
  if (pc.property2plus) return "2+";
  if (pc.property2minus) return "2-";
  if (pc.property3) return "3";
  if (pc.property1) return "1";
  return "none";
}

std::string step_label(const Step& step) {
  if (std::holds_alternative<UnitaryMatrix>(step)) return "unitary";
  std::string out = "query(";
  const QuerySpec& q = std::get<QuerySpec>(step);
  for (std::size_t i = 0; i < q.vars.size(); ++i) {
    if (i > 0) out += ", ";
    out += q.vars[i] ? "x" + std::to_string(*q.vars[i]) : "-";
  }
  return out + ")";
}

// Reports go to stdout unless --out FILE was given.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Input parse_input(const QueryAlgorithm& alg, const std::string& bits) {
  const Input input = Input::from_string(bits);
  if (input.n != alg.num_vars) {
    throw std::invalid_argument(
        "input has " + std::to_string(input.n) + " bits but " + alg.name +
        " reads " + std::to_string(alg.num_vars) + " variables");
  }
  return input;
}

void cmd_catalog_list(std::ostream& os) {
  for (const CatalogEntry& entry : catalog_entries()) {
    os << entry.name;
    if (entry.parameterized) os << " (parameterized)";
    os << "\n  " << entry.summary << "\n";
  }
}

void cmd_run(const QueryAlgorithm& alg, const std::string& bits, bool trace,
             std::ostream& os) {
  const Input input = parse_input(alg, bits);
  if (trace) {
    const std::vector<StateVector> states = run_trace(alg, input);
    os << fmt_state(states[0]) << "  initial\n";
    for (std::size_t i = 1; i < states.size(); ++i) {
      os << fmt_state(states[i]) << "  after " << step_label(alg.steps[i - 1])
         << "\n";
    }
  }
  const OutcomeProbabilities outcome =
      outcome_probabilities(run(alg, input), alg.measurement);
  os << "p(1) = " << fmt_number(outcome.p1)
     << ", p(0) = " << fmt_number(outcome.p0) << "\n";
  os << (outcome.p1 > outcome.p0 ? "ACCEPT" : "REJECT") << "\n";
}

void cmd_derive(const QueryAlgorithm& alg, std::ostream& os) {
  const DerivedTable derived = derive_truth_table(alg);
  for (std::uint32_t w = 0; w < derived.table.size(); ++w) {
    os << Input{alg.num_vars, w}.to_string() << " "
       << static_cast<int>(derived.table.value(w)) << "\n";
  }
  os << "worst-case correct probability: " << fmt_number(derived.min_correct)
     << "\n";
}

void cmd_verify(const QueryAlgorithm& alg, const std::string& function_name,
                std::ostream& os) {
  TruthTable target =
      function_name.empty() ? derive_truth_table(alg).table
                            : resolve_function(function_name);
  const VerificationReport report = verify_against(alg, target);
  os << "algorithm: " << alg.name << " (" << alg.num_vars << " variables, "
     << report.query_count << " queries)\n";
  os << "target: "
     << (function_name.empty() ? std::string("derived truth table")
                               : function_name)
     << "\n";
  os << "classification: "
     << classification_label(report.classification, report.min_correct)
     << "\n";
  os << "min accept probability: " << fmt_number(report.min_p_accept) << "\n";
  os << "min reject probability: " << fmt_number(report.min_p_reject) << "\n";
  os << "worst input: " << report.worst_input.to_string()
     << " (correct with probability " << fmt_number(report.min_correct)
     << ")\n";
  os << "property class: " << property_label(report.property_class) << "\n";
  os << "gap: "
     << gap_line(report.complexity, report.classification, report.min_correct,
                 report.query_count)
     << "\n";
}

void emit_document(const QueryAlgorithm& alg, const std::string& out_path,
                   const std::string& notes) {
  if (out_path.empty()) {
    std::cout << to_document(alg, notes) << "\n";
  } else {
    save_algorithm(alg, out_path, notes);
    std::cerr << "wrote " << alg.name << " to " << out_path << "\n";
  }
}

std::vector<int> parse_sigma(const std::string& text) {
  std::vector<int> sigma;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      sigma.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed permutation '" + text +
                                  "'; expected e.g. 2,4,1,3");
    }
  }
  return sigma;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and bounded-error quantum query algorithms over "
               "Boolean functions"};
  app.require_subcommand(1);

  std::string out_path;

  // catalog list
  auto* catalog_cmd = app.add_subcommand("catalog", "catalog inspection");
  catalog_cmd->require_subcommand(1);
  auto* catalog_list = catalog_cmd->add_subcommand(
      "list", "list the built-in algorithms");

  // run
  AlgSource run_src;
  std::string run_input;
  bool run_trace_flag = false;
  auto* run_cmd = app.add_subcommand("run", "run an algorithm on one input");
  add_source_options(run_cmd, run_src);
  run_cmd->add_option("--input", run_input, "input bits x1..xn left to right")
      ->required();
  run_cmd->add_flag("--trace", run_trace_flag,
                    "print the state after every step");
  run_cmd->add_option("--out", out_path, "write the report to a file");

  // derive
  AlgSource derive_src;
  auto* derive_cmd =
      app.add_subcommand("derive", "print the derived truth table");
  add_source_options(derive_cmd, derive_src);
  derive_cmd->add_option("--out", out_path, "write the report to a file");

  // verify
  AlgSource verify_src;
  std::string verify_function;
  auto* verify_cmd = app.add_subcommand(
      "verify", "check an algorithm against a target function");
  add_source_options(verify_cmd, verify_src);
  verify_cmd->add_option("--function", verify_function,
                         "named target function (default: derived table)");
  verify_cmd->add_option("--out", out_path, "write the report to a file");

  // transform
  auto* transform_cmd =
      app.add_subcommand("transform", "produce a transformed algorithm");
  transform_cmd->require_subcommand(1);
  AlgSource tf_src;
  std::string tf_sigma;
  int tf_to = 0;
  auto* tf_invert = transform_cmd->add_subcommand(
      "invert", "swap accepting and rejecting outputs");
  add_source_options(tf_invert, tf_src);
  tf_invert->add_option("--out", out_path, "write the document to a file");
  auto* tf_move = transform_cmd->add_subcommand(
      "move-accept", "move the accepting output to another basis state");
  add_source_options(tf_move, tf_src);
  tf_move->add_option("--to", tf_to, "target output, 1-based")->required();
  tf_move->add_option("--out", out_path, "write the document to a file");
  auto* tf_permute = transform_cmd->add_subcommand(
      "permute-vars", "relabel the queried variables");
  add_source_options(tf_permute, tf_src);
  tf_permute
      ->add_option("--sigma", tf_sigma, "permutation sigma(1),...,sigma(n)")
      ->required();
  tf_permute->add_option("--out", out_path, "write the document to a file");

  // compose
  auto* compose_cmd =
      app.add_subcommand("compose", "combine algorithms in superposition");
  compose_cmd->require_subcommand(1);
  AlgSource comp_a;
  AlgSource comp_b;
  AlgSource comp_c;
  AlgSource comp_d;
  auto* comp_pair = compose_cmd->add_subcommand(
      "and-pair", "two algorithms, same-sign acceptance");
  comp_pair->add_option("--a", comp_a.alg, "first catalog algorithm")
      ->required();
  comp_pair->add_option("--b", comp_b.alg, "second catalog algorithm")
      ->required();
  comp_pair->add_option("--out", out_path, "write the document to a file");
  auto* comp_quad = compose_cmd->add_subcommand(
      "quad", "four algorithms, accept when at least three accept");
  comp_quad->add_option("--a", comp_a.alg, "first catalog algorithm")
      ->required();
  comp_quad->add_option("--b", comp_b.alg, "second catalog algorithm")
      ->required();
  comp_quad->add_option("--c", comp_c.alg, "third catalog algorithm")
      ->required();
  comp_quad->add_option("--d", comp_d.alg, "fourth catalog algorithm")
      ->required();
  comp_quad->add_option("--out", out_path, "write the document to a file");

  // report tables
  auto* report_cmd = app.add_subcommand("report", "reproduction reports");
  report_cmd->require_subcommand(1);
  auto* report_tables =
      report_cmd->add_subcommand("tables", "regenerate every summary table");
  report_tables->add_option("--out", out_path, "write the report to a file");

  // save / load
  AlgSource save_src;
  std::string save_notes;
  auto* save_cmd =
      app.add_subcommand("save", "write an algorithm document");
  add_source_options(save_cmd, save_src);
  save_cmd->add_option("--out", out_path, "destination file")->required();
  save_cmd->add_option("--notes", save_notes, "free-form document notes");
  std::string load_path;
  auto* load_cmd =
      app.add_subcommand("load", "validate and summarize a document");
  load_cmd->add_option("--file", load_path, "algorithm document")->required();
  load_cmd->add_option("--out", out_path, "write the report to a file");

  try {
    app.parse(argc, argv);

    if (*catalog_list) {
      OutputTarget target(out_path);
      cmd_catalog_list(target.stream());
    } else if (*run_cmd) {
      OutputTarget target(out_path);
      cmd_run(resolve(run_src), run_input, run_trace_flag, target.stream());
    } else if (*derive_cmd) {
      OutputTarget target(out_path);
      cmd_derive(resolve(derive_src), target.stream());
    } else if (*verify_cmd) {
      OutputTarget target(out_path);
      cmd_verify(resolve(verify_src), verify_function, target.stream());
    } else if (*tf_invert) {
      emit_document(invert_outputs(resolve(tf_src)), out_path, "");
    } else if (*tf_move) {
      emit_document(move_accept(resolve(tf_src), tf_to), out_path, "");
    } else if (*tf_permute) {
      emit_document(
          permute_query_variables(resolve(tf_src), parse_sigma(tf_sigma)),
          out_path, "");
    } else if (*comp_pair) {
      const PairComposition pair =
          compose_and_pair_plan(resolve(comp_a), resolve(comp_b));
      std::cerr << pair.algorithm.name << ": " << pair.plan.total_vars
                << " variables, " << pair.algorithm.query_count()
                << " queries, "
                << (pair.conjunction
                        ? "decides the conjunction of the derived functions"
                        : "decides same-sign joint acceptance")
                << "\n";
      emit_document(pair.algorithm, out_path, "");
    } else if (*comp_quad) {
      const QuadComposition quad =
          compose_quad_plan(resolve(comp_a), resolve(comp_b),
                            resolve(comp_c), resolve(comp_d));
      std::cerr << quad.algorithm.name << ": " << quad.plan.total_vars
                << " variables, " << quad.algorithm.query_count()
                << " queries, accepts when at least three blocks accept\n";
      emit_document(quad.algorithm, out_path, "");
    } else if (*report_tables) {
      OutputTarget target(out_path);
      qq::reports::write_reports(target.stream());
    } else if (*save_cmd) {
      const QueryAlgorithm alg = resolve(save_src);
      save_algorithm(alg, out_path, save_notes);
      std::cerr << "wrote " << alg.name << " to " << out_path << "\n";
    } else if (*load_cmd) {
      const AlgorithmDocument doc = load_algorithm(load_path);
      OutputTarget target(out_path);
      std::ostream& os = target.stream();
      const DerivedTable derived = derive_truth_table(doc.algorithm);
      os << "name: " << doc.algorithm.name << "\n";
      os << "variables: " << doc.algorithm.num_vars << "\n";
      os << "dimension: " << doc.algorithm.dim() << "\n";
      os << "queries: " << doc.algorithm.query_count() << "\n";
      os << "property class: " << property_label(classify(doc.algorithm))
         << "\n";
      os << "worst-case correct probability: "
         << fmt_number(derived.min_correct) << "\n";
      if (!doc.notes.empty()) os << "notes: " << doc.notes << "\n";
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
