// Command-line front end.  Every subcommand parses its inputs, calls one
// library operation, and prints a deterministic text rendering.  Exit codes:
// 0 success, 1 typed mathematical error (name printed to stderr), 2 usage.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"
#include "wittkit/wittkit.hpp"

namespace {

using namespace wittkit;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Element and automorphism arguments are inline text, or `@path` to read the
// text from a file.
std::string resolve_arg(const std::string& raw) {
  if (!raw.empty() && raw[0] == '@') return slurp(raw.substr(1));
  return raw;
}

// Inline elements may omit the `@prec` suffix; the working precision fills in.
VectorField read_element(const std::string& raw, int prec) {
  std::string text = resolve_arg(raw);
  if (text.find("@prec") == std::string::npos)
    text += " @prec " + std::to_string(prec);
  return parse_element(text);
}

Automorphism read_aut(const std::string& raw) { return parse_aut(resolve_arg(raw)); }

void emit_element(const VectorField& x, const std::string& mode) {
  std::cout << (mode == "keyvalue" ? keyvalue_element(x) : print_element(x)) << "\n";
}

void emit_aut(const Automorphism& a, const std::string& mode) {
  std::cout << (mode == "keyvalue" ? keyvalue_aut(a) : print_aut(a)) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculator for formal vector fields f(t)*d/dt"};
  app.require_subcommand(1);

  int prec = 16;
  std::string output = "canonical";
  app.add_option("--prec", prec, "working precision (element window top)")
      ->capture_default_str();
  app.add_option("--output", output, "rendering mode")
      ->check(CLI::IsMember({"canonical", "keyvalue"}))
      ->capture_default_str();

  std::vector<std::string> args;  // positional tokens, per subcommand
  std::string file_path;
  std::string kind = "element";
  std::vector<std::string> family_names;
  std::vector<std::string> base_point_texts;
  int bound = 3;
  int rank_steps = 0;
  std::string rank_op, rank_vec;

  auto* cmd_bracket = app.add_subcommand("bracket", "Lie bracket of two elements");
  cmd_bracket->add_option("x", args, "elements")->required()->expected(2);

  auto* cmd_exp = app.add_subcommand("exp-ad", "apply exp(ad x) to an element");
  cmd_exp->add_option("x", args, "direction and element")->required()->expected(2);

  auto* cmd_apply = app.add_subcommand("aut-apply", "apply an automorphism to an element");
  cmd_apply->add_option("a", args, "automorphism and element")->required()->expected(2);

  auto* cmd_compose = app.add_subcommand("aut-compose",
                                         "compose two automorphisms (left acts last)");
  cmd_compose->add_option("a", args, "automorphisms")->required()->expected(2);

  auto* cmd_invert = app.add_subcommand("aut-invert", "invert an automorphism");
  cmd_invert->add_option("a", args, "automorphism")->required()->expected(1);

  auto* cmd_factorize =
      app.add_subcommand("aut-factorize", "factor an image table as exp(ad x) o scale_b");
  cmd_factorize->add_option("--file", file_path, "image table file")->required();

  auto* cmd_normal = app.add_subcommand("normal-form",
                                        "conjugate an element toward its leading term");
  cmd_normal->add_option("y", args, "element")->required()->expected(1);

  auto* cmd_check = app.add_subcommand("check-derivation",
                                       "test the Leibniz rule on a derivation table");
  cmd_check->add_option("--file", file_path, "derivation table file")->required();

  auto* cmd_recover = app.add_subcommand("recover-inner",
                                         "recover the generator of an inner derivation");
  cmd_recover->add_option("--file", file_path, "derivation table file")->required();

  auto* cmd_ideal = app.add_subcommand("ideal-express",
                                       "express an element via brackets against another");
  cmd_ideal->add_option("x", args, "ideal generator and target")->required()->expected(2);

  auto* cmd_rank = app.add_subcommand("locfin-rank",
                                      "rank of the iterates v, (ad s)v, ..., (ad s)^K v");
  cmd_rank->add_option("s", rank_op, "operator element")->required();
  cmd_rank->add_option("v", rank_vec, "vector element")->required();
  cmd_rank->add_option("K", rank_steps, "iterate count bound")->required();

  auto* cmd_verify = app.add_subcommand("verify-examples",
                                        "sweep the generator-family bracket relations");
  cmd_verify->add_option("--family", family_names, "families to run (default: all)");
  cmd_verify->add_option("--bound", bound, "index bound")->capture_default_str();
  cmd_verify->add_option("--base-point", base_point_texts,
                         "base points for families that take one (default: 1, 2, -1/2)");

  auto* cmd_parse = app.add_subcommand("parse", "parse a text form and reprint it");
  cmd_parse->add_option("text", args, "input text")->required()->expected(1);
  cmd_parse->add_option("--kind", kind, "input grammar")
      ->check(CLI::IsMember({"element", "series", "aut"}))
      ->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);

    if (cmd_bracket->parsed()) {
      emit_element(bracket(read_element(args[0], prec), read_element(args[1], prec)),
                   output);
    } else if (cmd_exp->parsed()) {
      emit_element(exp_ad(read_element(args[0], prec), read_element(args[1], prec)),
                   output);
    } else if (cmd_apply->parsed()) {
      emit_element(aut_apply(read_aut(args[0]), read_element(args[1], prec)), output);
    } else if (cmd_compose->parsed()) {
      emit_aut(aut_compose(read_aut(args[0]), read_aut(args[1]), prec), output);
    } else if (cmd_invert->parsed()) {
      emit_aut(aut_invert(read_aut(args[0])), output);
    } else if (cmd_factorize->parsed()) {
      emit_aut(aut_factorize(parse_image_table(slurp(file_path))), output);
    } else if (cmd_normal->parsed()) {
      NormalFormReport rep = normal_form(read_element(args[0], prec));
      std::cout << (output == "keyvalue" ? keyvalue_report(rep) : print_report(rep))
                << "\n";
    } else if (cmd_check->parsed()) {
      auto witness = check_derivation(parse_derivation_table(slurp(file_path)));
      if (witness) {
        std::cout << "violated (" << witness->first << ", " << witness->second << ")\n";
        return 1;
      }
      std::cout << "ok\n";
    } else if (cmd_recover->parsed()) {
      emit_element(recover_inner(parse_derivation_table(slurp(file_path))), output);
    } else if (cmd_ideal->parsed()) {
      IdealRecipe rec =
          express_in_ideal(read_element(args[0], prec), read_element(args[1], prec));
      std::cout << (output == "keyvalue" ? keyvalue_recipe(rec) : print_recipe(rec))
                << "\n";
    } else if (cmd_rank->parsed()) {
      std::cout << "rank = "
                << locfin_rank(read_element(rank_op, prec), read_element(rank_vec, prec),
                               rank_steps)
                << "\n";
    } else if (cmd_verify->parsed()) {
      std::vector<Family> families;
      for (const auto& name : family_names) families.push_back(family_from_name(name));
      if (families.empty()) families = all_families();
      std::vector<Rational> base_points;
      for (const auto& text : base_point_texts) base_points.push_back(parse_rational(text));
      if (base_points.empty()) base_points = default_base_points();
      SuiteReport report = run_suite(prec, bound, families, base_points);
      for (const auto& line : report.lines) std::cout << format_suite_line(line) << "\n";
      std::cout << report.summary() << "\n";
      if (report.failed > 0) return 1;
    } else if (cmd_parse->parsed()) {
      std::string text = resolve_arg(args[0]);
      if (kind == "series") {
        emit_element(vf_from_series(parse_series_expr(text, prec)), output);
      } else if (kind == "aut") {
        emit_aut(parse_aut(text), output);
      } else {
        emit_element(read_element(text, prec), output);
      }
    }
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
