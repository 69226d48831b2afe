// Command-line front end: validate, classify, split, simplify, glue,
// verify-map, gen, export-dot over the JSON poset documents.
// Exit codes: 0 success, 1 failed check, 2 parse or validation error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kposet/analysis.hpp"
#include "kposet/dot.hpp"
#include "kposet/generate.hpp"
#include "kposet/io.hpp"
#include "kposet/transform.hpp"

namespace fs = std::filesystem;
using namespace kposet;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    std::exit(2);
  }
  out << text;
}

SkeletonPoset load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_poset(text);
  } catch (const ParseError& e) {
    std::cerr << "error: " << path << ":" << e.what() << "\n";
    std::exit(2);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations)
      std::cerr << "error: " << path << ": " << v.to_string() << "\n";
    std::exit(2);
  }
}

fs::path out_dir_or(const std::string& given, const std::string& input,
                    const std::string& suffix) {
  const fs::path dir =
      given.empty() ? fs::path(fs::path(input).replace_extension().string() + suffix)
                    : fs::path(given);
  fs::create_directories(dir);
  return dir;
}

int run_validate(const std::string& file) {
  const KReport report = analyze_k(load(file));
  std::cout << "k-poset: " << (report.is_k ? "yes" : "no") << "\n";
  std::cout << "proper: " << (report.is_proper ? "yes" : "no") << "\n";
  std::cout << "card: " << report.card.to_string() << "\n";
  for (const auto& v : report.violations)
    std::cout << "violation " << v.to_string() << "\n";
  return report.is_k && report.is_proper ? 0 : 1;
}

int run_classify(const std::string& file) {
  const SkeletonPoset p = load(file);
  try {
    std::cout << classify_single_max(p).to_string() << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_split(const std::string& file, const std::string& node, const std::string& out) {
  const SkeletonPoset v = load(file);
  try {
    const SplittingCertificate cert = split_at(v, node);
    const fs::path dir = out_dir_or(out, file, ".split");
    write_file(dir / "upper.json", serialize_poset(cert.upper()));
    write_file(dir / "map.json", serialize_certificate_map(cert));
    std::cout << "fiber:";
    for (const auto& f : cert.fiber) std::cout << " " << f;
    std::cout << "\nwrote " << (dir / "upper.json").string() << "\n";
    std::cout << "wrote " << (dir / "map.json").string() << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_simplify(const std::string& file, const std::string& out) {
  const SkeletonPoset v = load(file);
  try {
    const SimplifyingChain chain = simplify(v);
    const fs::path dir = out_dir_or(out, file, ".chain");
    const auto es = e_sequence(chain);
    const std::size_t stages = chain.stages.size();
    for (std::size_t i = 0; i < stages; ++i) {
      const ChainStage& stage = chain.stages[stages - 1 - i];  // stage i == V_i
      write_file(dir / ("stage" + std::to_string(i) + ".json"),
                 serialize_poset(stage.poset));
      if (stage.cert)
        write_file(dir / ("map" + std::to_string(i) + ".json"),
                   serialize_certificate_map(*stage.cert));
    }
    std::string summary = "{\n  \"e_sequence\": [";
    for (std::size_t i = 0; i < es.size(); ++i)
      summary += (i ? ", " : "") + std::to_string(es[i]);
    summary += "],\n  \"stages\": " + std::to_string(stages) + "\n}\n";
    write_file(dir / "summary.json", summary);
    std::cout << "e-sequence:";
    for (const auto e : es) std::cout << " " << e;
    std::cout << "\nwrote " << stages << " stages to " << dir.string() << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_glue(const std::string& file, const std::string& fiber_arg, const std::string& out) {
  const SkeletonPoset u = load(file);
  std::vector<NodeId> fiber;
  std::stringstream ss(fiber_arg);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) fiber.push_back(item);
  try {
    const auto [v, cert] = glue(u, fiber);
    const fs::path dir = out_dir_or(out, file, ".glued");
    write_file(dir / "glued.json", serialize_poset(v));
    write_file(dir / "map.json", serialize_certificate_map(cert));
    std::cout << "glued: " << cert.split_node << "\n";
    std::cout << "wrote " << (dir / "glued.json").string() << "\n";
    std::cout << "wrote " << (dir / "map.json").string() << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_verify_map(const std::string& upper_file, const std::string& lower_file,
                   const std::string& map_file) {
  SkeletonPoset upper = load(upper_file);
  SkeletonPoset lower = load(lower_file);
  SplittingCertificate cert{"", {}, PosetMap{}};
  try {
    cert = parse_certificate(std::move(upper), std::move(lower), read_file(map_file));
  } catch (const ParseError& e) {
    std::cerr << "error: " << map_file << ":" << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << map_file << ": " << e.what() << "\n";
    return 2;
  }
  const auto violations = verify_splitting(cert);
  if (violations.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const auto& v : violations) std::cout << "violation " << v.to_string() << "\n";
  return 1;
}

int run_gen(const GenParams& params, const std::string& card_text, const std::string& out) {
  GenParams p = params;
  try {
    p.card = CardTag::parse(card_text);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    const std::string doc = serialize_poset(gen_proper(p));
    if (out.empty()) {
      std::cout << doc;
    } else {
      fs::create_directories(out);
      write_file(fs::path(out) / "gen.json", doc);
      std::cout << "wrote " << (fs::path(out) / "gen.json").string() << "\n";
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-dimensional K-poset toolkit"};
  app.require_subcommand(1);

  std::string file, node, fiber_arg, out_dir;
  std::string upper_file, lower_file, map_file;
  GenParams params;
  std::string card_text = "aleph0";

  auto* validate_cmd = app.add_subcommand("validate", "check the K-poset and properness axioms");
  validate_cmd->add_option("file", file)->required();

  auto* classify_cmd = app.add_subcommand("classify", "point / fan / tent classification");
  classify_cmd->add_option("file", file)->required();

  auto* split_cmd = app.add_subcommand("split", "split a single-max poset at its top");
  split_cmd->add_option("file", file)->required();
  split_cmd->add_option("node", node)->required();
  split_cmd->add_option("--out-dir", out_dir);

  auto* simplify_cmd = app.add_subcommand("simplify", "build a full simplifying chain");
  simplify_cmd->add_option("file", file)->required();
  simplify_cmd->add_option("--out-dir", out_dir);

  auto* glue_cmd = app.add_subcommand("glue", "identify a fiber of maximal nodes");
  glue_cmd->add_option("file", file)->required();
  glue_cmd->add_option("fiber", fiber_arg, "comma separated maximal nodes")->required();
  glue_cmd->add_option("--out-dir", out_dir);

  auto* verify_cmd = app.add_subcommand("verify-map", "check a splitting certificate");
  verify_cmd->add_option("upper", upper_file)->required();
  verify_cmd->add_option("lower", lower_file)->required();
  verify_cmd->add_option("map", map_file)->required();

  auto* gen_cmd = app.add_subcommand("gen", "seeded proper K-poset generation");
  gen_cmd->add_option("--seed", params.seed);
  gen_cmd->add_option("--n-min", params.n_min);
  gen_cmd->add_option("--n-max2", params.n_max2);
  gen_cmd->add_option("--n-h", params.n_h);
  gen_cmd->add_option("--card", card_text, "finite:N | aleph0 | beta");
  gen_cmd->add_option("--out-dir", out_dir);

  auto* dot_cmd = app.add_subcommand("export-dot", "GraphViz rendering");
  dot_cmd->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);

  if (validate_cmd->parsed()) return run_validate(file);
  if (classify_cmd->parsed()) return run_classify(file);
  if (split_cmd->parsed()) return run_split(file, node, out_dir);
  if (simplify_cmd->parsed()) return run_simplify(file, out_dir);
  if (glue_cmd->parsed()) return run_glue(file, fiber_arg, out_dir);
  if (verify_cmd->parsed()) return run_verify_map(upper_file, lower_file, map_file);
  if (gen_cmd->parsed()) return run_gen(params, card_text, out_dir);
  if (dot_cmd->parsed()) {
    std::cout << export_dot(load(file));
    return 0;
  }
  return 2;
}
