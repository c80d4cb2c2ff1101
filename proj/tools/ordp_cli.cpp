#include <ordp/program.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::ordered_json;

std::string format_json(const std::vector<ordp::Report>& rs) {
  ordered_json out;
  out["reports"] = ordered_json::array();
  for (const auto& r : rs) {
    ordered_json j;
    j["command"] = r.command;
    j["verdicts"] = ordered_json::array();
    for (const auto& v : r.verdicts) j["verdicts"].push_back({{"name", v.name}, {"holds", v.holds}, {"detail", v.detail}});
    j["outputs"] = ordered_json::array();
    for (const auto& [k, v] : r.outputs) j["outputs"].push_back({{"name", k}, {"value", v}});
    j["status"] = r.passed() ? "pass" : "fail";
    out["reports"].push_back(j);
  }
  out["summary"] = {{"commands", rs.size()}, {"exit", ordp::exit_status(rs)}};
  return out.dump(2) + "\n";
}

std::string identities_program(unsigned p) {
  std::string s = std::to_string(p);
  return "(ring O (quo (poly Z (E F)) (rewrite (* (^ E " + std::to_string(p - 1) + ") F) " + s + ")))\n" +
         "(congruence D :p " + s + " :ring O :lambda E :mu F)\n(check identities D)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordp: finite flat group schemes of order p"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  unsigned p = 0, prec = ordp::default_precision();
  std::string input, direction;

  auto* identities = app.add_subcommand("identities", "verify the universal isogeny identities");
  identities->add_option("--p", p, "prime")->required();
  auto* w = app.add_subcommand("w", "derive the constants w_1..w_p");
  w->add_option("--p", p, "prime")->required();
  w->add_option("--prec", prec, "p-adic digits");
  std::map<std::string, CLI::App*> with_input;
  for (const char* name : {"kernel", "generator-check", "classify", "weil"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input", input, "program file")->required();
    with_input[name] = sub;
  }
  auto* functor = app.add_subcommand("functor", "translate between the two encodings");
  functor->add_option("--direction", direction)->required()->check(CLI::IsMember({"tcg2tgc", "tgc2tcg"}));
  functor->add_option("--input", input, "program file")->required();
  with_input["functor"] = functor;
  auto* run = app.add_subcommand("run", "run a full program");
  run->add_option("file", input, "program file")->required();
  with_input["run"] = run;
  for (auto* sub : app.get_subcommands({})) sub->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string family, text, source;
  if (identities->parsed()) {
    family = "identities";
    source = "<identities>";
    if (!ordp::is_prime(p) || p > ordp::kIdentityPrimeBound) {
      std::cerr << "identities: --p must be a prime <= " << ordp::kIdentityPrimeBound << "\n";
      return 2;
    }
    text = identities_program(p);
  } else if (w->parsed()) {
    family = "w";
    source = "<w>";
    text = "(w " + std::to_string(p) + " " + std::to_string(prec) + ")\n";
  } else {
    for (const auto& [name, sub] : with_input) {
      if (sub->parsed()) family = name;
    }
    source = input;
    std::ifstream in(input);
    if (!in) {
      std::cerr << input << ": cannot open\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  ordp::Program prog;
  try {
    prog = ordp::parse_program(text);
    ordp::check_family(prog, family);
    if (family == "functor") {
      for (const auto& c : prog.commands) {
        if (c.form.items.size() > 1 && c.form.items[1].text != direction) {
          throw ordp::TypeError(c.form.at, "functor command does not match --direction " + direction);
        }
      }
    }
  } catch (const ordp::LocatedError& e) {
    std::cerr << source << ":" << e.where().str() << ": " << e.kind() << ": " << e.message() << "\n";
    return 2;
  } catch (const ordp::Error& e) {
    std::cerr << source << ": " << e.what() << "\n";
    return 2;
  }

  auto reports = ordp::execute(prog);
  std::cout << (format == "json" ? format_json(reports) : ordp::format_text(reports));
  return ordp::exit_status(reports);
}
