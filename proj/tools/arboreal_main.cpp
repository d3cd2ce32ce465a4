#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "arboreal/generate.hpp"
#include "arboreal/io.hpp"
#include "arboreal/recognize.hpp"
#include "arboreal/uproot.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;   // input is mathematically rejected, witness printed
constexpr int kInputError = 2; // parse or validation problem

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string tuple3(const std::array<std::string, 3>& t) {
  return "(" + t[0] + "," + t[1] + "," + t[2] + ")";
}

std::string tuple4(const std::array<std::string, 4>& t) {
  return "(" + t[0] + "," + t[1] + "," + t[2] + "," + t[3] + ")";
}

int print_report(const arboreal::PartialDistance& d,
                 const arboreal::RecognitionReport& r) {
  using arboreal::Rational;
  if (r.u1.pass) {
    std::cout << "U1 pass: support graph connected and chordal\n";
  } else if (r.u1.disconnected) {
    std::cout << "U1 violated: no finite path between " << r.u1.disconnected->first
              << " and " << r.u1.disconnected->second << "\n";
  } else {
    std::cout << "U1 violated: induced cycle";
    for (const auto& l : *r.u1.cycle) std::cout << " " << l;
    std::cout << "\n";
  }
  if (r.u2.pass) {
    std::cout << "U2 pass: three-point condition on finite triples\n";
  } else {
    const auto& t = *r.u2.witness;
    std::cout << "U2 violated by " << tuple3(t) << ": " << d.at(t[0], t[1])->str()
              << " > max(" << d.at(t[0], t[2])->str() << ","
              << d.at(t[1], t[2])->str() << ")\n";
  }
  if (r.u3.pass) {
    std::cout << "U3 pass: four-point condition at infinite pairs\n";
  } else {
    const auto& t = *r.u3.witness;
    std::cout << "U3 violated by " << tuple4(t) << ": " << d.at(t[0], t[1])->str()
              << " is not below min(" << d.at(t[0], t[2])->str() << ","
              << d.at(t[0], t[3])->str() << "," << d.at(t[1], t[2])->str() << ","
              << d.at(t[1], t[3])->str() << ")\n";
  }
  std::cout << (r.verdict ? "accepted: arboreal ultrametric"
                          : "rejected: not an arboreal ultrametric")
            << "\n";
  return r.verdict ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultrametric arboreal networks: rooting, recognition, reconstruction"};
  app.require_subcommand(1);

  // uproot
  std::string up_tree, up_out, up_dot, up_wcps, up_trace;
  bool up_normalize = false;
  auto* uproot_cmd = app.add_subcommand("uproot",
      "root a weighted tree into its ultrametric network");
  uproot_cmd->add_option("tree", up_tree, "Newick tree file")->required();
  uproot_cmd->add_option("out", up_out, "output network file")->required();
  uproot_cmd->add_option("--dot", up_dot, "also write DOT here");
  uproot_cmd->add_option("--wcps", up_wcps, "comma-separated leaf order to use");
  uproot_cmd->add_option("--trace", up_trace,
                         "directory for per-step network snapshots");
  uproot_cmd->add_flag("--normalize", up_normalize,
                       "suppress outdegree-1 vertices in the output");

  // recognize
  std::string rec_matrix;
  auto* recognize_cmd = app.add_subcommand("recognize",
      "test whether a partial distance is an arboreal ultrametric");
  recognize_cmd->add_option("matrix", rec_matrix, "CSV matrix file")->required();

  // reconstruct
  std::string rc_matrix, rc_out, rc_dot;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct",
      "build the unique representing network of a partial distance");
  reconstruct_cmd->add_option("matrix", rc_matrix, "CSV matrix file")->required();
  reconstruct_cmd->add_option("out", rc_out, "output network file")->required();
  reconstruct_cmd->add_option("--dot", rc_dot, "also write DOT here");

  // distances
  std::string di_net, di_out;
  auto* distances_cmd = app.add_subcommand("distances",
      "induced partial distance of a network");
  distances_cmd->add_option("network", di_net, "network file")->required();
  distances_cmd->add_option("out", di_out, "output CSV file")->required();

  // check
  std::string ck_net;
  auto* check_cmd = app.add_subcommand("check",
      "validate a network and test ultrametricity");
  check_cmd->add_option("network", ck_net, "network file")->required();

  // underlying
  std::string un_net, un_out;
  auto* underlying_cmd = app.add_subcommand("underlying",
      "underlying weighted tree of a network");
  underlying_cmd->add_option("network", un_net, "network file")->required();
  underlying_cmd->add_option("out", un_out, "output Newick file")->required();

  // iso
  std::string iso_a, iso_b;
  auto* iso_cmd = app.add_subcommand("iso",
      "compare two files up to isomorphism");
  iso_cmd->add_option("a", iso_a, "first file")->required();
  iso_cmd->add_option("b", iso_b, "second file")->required();

  // gen
  std::string gen_kind, gen_roots = "multi", gen_out;
  int gen_leaves = 0;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "seeded random instances");
  gen_cmd->add_option("kind", gen_kind, "tree or matrix")
      ->required()
      ->check(CLI::IsMember({"tree", "matrix"}));
  gen_cmd->add_option("--leaves", gen_leaves, "leaf count")->required();
  gen_cmd->add_option("--seed", gen_seed, "seed")->required();
  gen_cmd->add_option("--roots", gen_roots, "single or multi")
      ->check(CLI::IsMember({"single", "multi"}));
  gen_cmd->add_option("-o,--out", gen_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*uproot_cmd) {
      auto tree = arboreal::parse_newick(read_file(up_tree));
      std::optional<std::vector<std::string>> seq;
      if (!up_wcps.empty()) {
        std::vector<std::string> parts;
        std::string item;
        std::istringstream ss(up_wcps);
        while (std::getline(ss, item, ',')) parts.push_back(item);
        seq = parts;
      }
      arboreal::UprootTrace trace;
      trace.record_snapshots = !up_trace.empty();
      arboreal::UprootOptions options;
      options.trace = &trace;
      arboreal::ArborealNetwork net;
      try {
        net = arboreal::ultrametric_uprooting(tree, seq, options);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
      }
      if (!arboreal::is_weight_preserving_uprooting(net, tree))
        throw std::logic_error("output is not a weight-preserving rooting");
      if (arboreal::is_ultrametric_network(net))
        throw std::logic_error("output is not ultrametric");
      if (!up_trace.empty()) {
        for (size_t i = 0; i < trace.snapshots.size(); ++i) {
          write_file(up_trace + "/step_" + std::to_string(i + 2) + ".anet",
                     arboreal::write_anet(trace.snapshots[i]));
        }
      }
      if (up_normalize) net = arboreal::suppress_outdegree1(net);
      write_file(up_out, arboreal::write_anet(net));
      if (!up_dot.empty()) write_file(up_dot, arboreal::export_dot(net));
      return kOk;
    }

    if (*recognize_cmd) {
      auto d = arboreal::parse_matrix(read_file(rec_matrix));
      return print_report(d, arboreal::recognize(d));
    }

    if (*reconstruct_cmd) {
      auto d = arboreal::parse_matrix(read_file(rc_matrix));
      auto report = arboreal::recognize(d);
      if (!report.verdict) return print_report(d, report);
      auto net = arboreal::reconstruct(d);
      write_file(rc_out, arboreal::write_anet(net));
      if (!rc_dot.empty()) write_file(rc_dot, arboreal::export_dot(net));
      return kOk;
    }

    if (*distances_cmd) {
      auto net = arboreal::parse_anet(read_file(di_net));
      write_file(di_out, arboreal::write_matrix(arboreal::induced_partial_distance(net)));
      return kOk;
    }

    if (*check_cmd) {
      auto net = arboreal::parse_anet(read_file(ck_net));
      std::cout << "network: " << net.vertex_count() << " vertices, "
                << net.arc_count() << " arcs, " << net.roots().size()
                << " roots\n";
      if (auto w = arboreal::is_ultrametric_network(net)) {
        std::cout << "not ultrametric: vertex " << w->vertex
                  << " reaches leaves " << w->leaf_x << " and " << w->leaf_y
                  << " at different lengths\n";
        return kRejected;
      }
      std::cout << "ultrametric\n";
      return kOk;
    }

    if (*underlying_cmd) {
      auto net = arboreal::parse_anet(read_file(un_net));
      write_file(un_out, arboreal::write_newick(arboreal::underlying_weighted_tree(net)) + "\n");
      return kOk;
    }

    if (*iso_cmd) {
      auto text_a = read_file(iso_a);
      auto text_b = read_file(iso_b);
      auto looks_anet = [](const std::string& s) {
        return s.rfind("anet", 0) == 0;
      };
      if (looks_anet(text_a) != looks_anet(text_b)) {
        std::cerr << "error: cannot compare a network with a tree\n";
        return kInputError;
      }
      bool same;
      if (looks_anet(text_a)) {
        same = arboreal::canonical_form(arboreal::parse_anet(text_a)) ==
               arboreal::canonical_form(arboreal::parse_anet(text_b));
      } else {
        same = arboreal::tree_canonical_form(arboreal::parse_newick(text_a)) ==
               arboreal::tree_canonical_form(arboreal::parse_newick(text_b));
      }
      std::cout << (same ? "isomorphic" : "not isomorphic") << "\n";
      return same ? kOk : kRejected;
    }

    if (*gen_cmd) {
      if (gen_leaves < 2) {
        std::cerr << "error: --leaves must be at least 2\n";
        return kInputError;
      }
      auto tree = gen_roots == "single"
                      ? arboreal::random_ultrametric_tree(gen_leaves, gen_seed)
                      : arboreal::random_tree(gen_leaves, gen_seed);
      std::string payload;
      if (gen_kind == "tree") {
        payload = arboreal::write_newick(tree) + "\n";
      } else {
        auto net = arboreal::ultrametric_uprooting(tree);
        payload = arboreal::write_matrix(arboreal::induced_partial_distance(net));
      }
      if (gen_out.empty())
        std::cout << payload;
      else
        write_file(gen_out, payload);
      return kOk;
    }
  } catch (const arboreal::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
