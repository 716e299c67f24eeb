// treeverb: finite-state automorphisms of the d-adic rooted tree.
//
// Subcommands work on automaton files in the line-oriented statedef format
// (see parse_automaton) and print results to stdout. Exit codes: 0 success,
// 1 domain error (valid input outside an operation's domain, or a failed
// verification), 2 malformed input or usage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "treeverb/constructions.hpp"
#include "treeverb/dsl.hpp"
#include "treeverb/errors.hpp"
#include "treeverb/parity.hpp"
#include "treeverb/quotient.hpp"
#include "treeverb/selftest.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw treeverb::domain_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw treeverb::domain_error("cannot write file: " + path.string());
  out << content;
}

treeverb::TreeAutomorphism load_automaton(const std::string& path) {
  return treeverb::parse_automaton(read_file(path));
}

void warn_even_degree(int degree) {
  if (degree % 2 == 0)
    std::cerr << "warning: chain classification theory applies to odd degree >= 3; "
                 "results for degree "
              << degree << " are formal predicate evaluations\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-state automorphisms of the d-adic rooted tree"};
  app.require_subcommand(1);

  // apply
  std::string apply_file, apply_vertex;
  auto* cmd_apply = app.add_subcommand("apply", "image of a vertex under an automorphism");
  cmd_apply->add_option("file", apply_file, "automaton file")->required();
  cmd_apply->add_option("--vertex", apply_vertex, "comma separated 1-based letters")->required();

  // parity
  std::string parity_file;
  int parity_levels = -1;
  bool parity_exact = false;
  auto* cmd_parity = app.add_subcommand("parity", "level parities of an automorphism");
  cmd_parity->add_option("file", parity_file, "automaton file")->required();
  auto* opt_levels =
      cmd_parity->add_option("--levels", parity_levels, "print the first N parity bits");
  auto* opt_exact = cmd_parity->add_flag(
      "--exact", parity_exact, "print the eventually periodic form pre=<bits>;per=<bits>");
  opt_levels->excludes(opt_exact);

  // classify
  std::string classify_file;
  auto* cmd_classify = app.add_subcommand("classify", "largest chain subgroup containing the element");
  cmd_classify->add_option("file", classify_file, "automaton file")->required();

  // decompose
  std::string dec_file, dec_out;
  int dec_depth = 0;
  auto* cmd_decompose =
      app.add_subcommand("decompose", "write u, y with u * u^y = g mod the level-N stabilizer");
  cmd_decompose->add_option("file", dec_file, "automaton file")->required();
  cmd_decompose->add_option("--depth", dec_depth, "congruence depth N")->required();
  cmd_decompose->add_option("--out", dec_out, "output directory")->required();

  // commutator-form
  std::string comm_file, comm_out;
  int comm_depth = 0;
  auto* cmd_comm = app.add_subcommand(
      "commutator-form", "write a, b with [t^a, b] = g mod the level-N stabilizer");
  cmd_comm->add_option("file", comm_file, "automaton file")->required();
  cmd_comm->add_option("--depth", comm_depth, "congruence depth N")->required();
  cmd_comm->add_option("--out", comm_out, "output directory")->required();

  // conjugate-to-odometer
  std::string spine_file, spine_out;
  auto* cmd_odo = app.add_subcommand("conjugate-to-odometer",
                                     "conjugator taking a spine automaton to the odometer");
  cmd_odo->add_option("spinefile", spine_file, "spine spec file")->required();
  cmd_odo->add_option("--out", spine_out, "output directory")->required();

  // order-two
  int ot_degree = 0;
  std::string ot_parity, ot_out;
  auto* cmd_ot =
      app.add_subcommand("order-two", "involution with a prescribed parity sequence");
  cmd_ot->add_option("--degree", ot_degree, "tree degree (>= 3)")->required();
  cmd_ot->add_option("--parity", ot_parity, "target, e.g. pre=10;per=0")->required();
  cmd_ot->add_option("--out", ot_out, "output automaton file")->required();

  // verify-chain
  int vc_degree = 0, vc_depth = 0;
  size_t vc_limit = 0;
  auto* cmd_vc = app.add_subcommand("verify-chain",
                                    "check the chain generation identities in a finite quotient");
  cmd_vc->add_option("--degree", vc_degree, "tree degree")->required();
  cmd_vc->add_option("--depth", vc_depth, "quotient depth n")->required();
  cmd_vc->add_option("--limit", vc_limit, "dense enumeration limit (default TREEVERB_LIMIT or 1e7)");

  // selftest
  auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_apply) {
      const auto g = load_automaton(apply_file);
      const auto v = treeverb::parse_vertex(apply_vertex, g.degree());
      std::cout << treeverb::format_vertex(treeverb::apply(g, v)) << '\n';
    } else if (*cmd_parity) {
      const auto g = load_automaton(parity_file);
      if (opt_levels->count()) {
        if (parity_levels < 0) throw treeverb::domain_error("level count must be >= 0");
        std::string bits;
        const auto seq = treeverb::parity_sequence(g);
        for (int n = 0; n < parity_levels; ++n)
          bits.push_back(seq.bit(static_cast<size_t>(n)) ? '1' : '0');
        std::cout << bits << '\n';
      } else {
        std::cout << treeverb::parity_sequence(g).to_string() << '\n';
      }
    } else if (*cmd_classify) {
      const auto g = load_automaton(classify_file);
      warn_even_degree(g.degree());
      const auto k = treeverb::classify_chain(g);
      if (k)
        std::cout << 'M' << *k << '\n';
      else
        std::cout << "trivial\n";
    } else if (*cmd_decompose) {
      const auto g = load_automaton(dec_file);
      const auto w = treeverb::decompose_transitive_pair(g, dec_depth);
      std::filesystem::create_directories(dec_out);
      const std::filesystem::path dir(dec_out);
      write_file(dir / "u.aut", treeverb::serialize_automaton(w.u));
      write_file(dir / "y.aut", treeverb::serialize_automaton(w.y));
      write_file(dir / "manifest",
                 "depth=" + std::to_string(w.depth) + " verified=true\n");
      std::cout << "wrote u.aut, y.aut, manifest to " << dec_out << '\n';
    } else if (*cmd_comm) {
      const auto g = load_automaton(comm_file);
      const auto form = treeverb::commutator_form(g, comm_depth);
      std::filesystem::create_directories(comm_out);
      const std::filesystem::path dir(comm_out);
      write_file(dir / "a.aut", treeverb::serialize_automaton(form.a));
      write_file(dir / "b.aut", treeverb::serialize_automaton(form.b));
      write_file(dir / "manifest",
                 "depth=" + std::to_string(form.depth) + " verified=true\n");
      std::cout << "wrote a.aut, b.aut, manifest to " << comm_out << '\n';
    } else if (*cmd_odo) {
      const auto spec = treeverb::parse_spine_spec(read_file(spine_file));
      const auto x = treeverb::conjugator_to_odometer(spec);
      std::filesystem::create_directories(spine_out);
      const std::filesystem::path dir(spine_out);
      write_file(dir / "x.aut", treeverb::serialize_automaton(x));
      write_file(dir / "manifest", "verified=true\n");
      std::cout << "wrote x.aut, manifest to " << spine_out << '\n';
    } else if (*cmd_ot) {
      const auto target = treeverb::ParitySequence::parse(ot_parity);
      const auto a = treeverb::order_two_rep(target, ot_degree);
      write_file(ot_out, treeverb::serialize_automaton(a));
      std::cout << "wrote " << ot_out << '\n';
    } else if (*cmd_vc) {
      warn_even_degree(vc_degree);
      const auto report = treeverb::verify_chain(vc_degree, vc_depth, vc_limit);
      std::cout << report.to_string();
      if (!report.all_pass()) return 1;
    } else if (*cmd_selftest) {
      if (!treeverb::run_selftest(std::cout)) return 1;
    }
  } catch (const treeverb::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const treeverb::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
