#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <ocposet/ocposet.hpp>

namespace {

using namespace ocposet;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

int env_threads() {
  const char* env = std::getenv("OCPOSET_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v < 1 ? 1 : v;
}

const char* rel_name(Rel r) {
  switch (r) {
    case Rel::before: return "before";
    case Rel::after: return "after";
    case Rel::incomparable: return "incomparable";
  }
  return "?";
}

int run_verify(const Poset& p, const json& j, TypeSet allowed) {
  switch (json_kind(j)) {
    case JsonKind::representation: {
      Representation rep = rep_from_json(j);
      ValidationReport vr = validate(rep, p, allowed);
      if (vr.ok) {
        std::cout << "representation valid\n";
        return 0;
      }
      for (const auto& name : vr.type_violations)
        std::cerr << "element '" << name << "' is typed outside the allowed set\n";
      for (const auto& m : vr.mismatches)
        std::cerr << "pair (" << m.a << ", " << m.b << "): poset says " << rel_name(m.expected)
                  << ", intervals give " << rel_name(m.actual) << "\n";
      return 2;
    }
    case JsonKind::certificate: {
      Certificate cert = cert_from_json(j);
      if (verify_certificate(p, cert)) {
        std::cout << "certificate verified\n";
        return 0;
      }
      std::cerr << "certificate does not establish non-representability\n";
      return 2;
    }
    default:
      fail(Errc::kind_mismatch, "expected a representation or certificate file");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed unit-interval representations of finite posets"};
  app.require_subcommand(1);

  std::string poset_path, types_str = "ABCD", out_path, name, rep_path, file_path, centers_path;
  std::string format = "ascii";
  int max_n = 4;
  bool twin_free_only = false, inseparable_only = false;

  auto* rec = app.add_subcommand("recognize", "decide whether a poset has a typed representation");
  rec->add_option("--poset", poset_path, "poset JSON file")->required();
  rec->add_option("--types", types_str, "allowed types, non-empty subset of ABCD");
  rec->add_option("--out", out_path, "write result here instead of stdout");

  auto* cls = app.add_subcommand("classify", "verdicts for all 15 non-empty type sets");
  cls->add_option("--poset", poset_path, "poset JSON file")->required();
  cls->add_option("--out", out_path, "write table here instead of stdout");

  auto* ver = app.add_subcommand("verify", "check a representation or certificate against a poset");
  ver->add_option("--poset", poset_path, "poset JSON file")->required();
  ver->add_option("--file", file_path, "representation or certificate JSON")->required();
  ver->add_option("--types", types_str, "allowed types for representation checking");

  auto* cat = app.add_subcommand("catalog", "write a named poset as JSON");
  cat->add_option("--name", name, "catalog entry name")->required();
  cat->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* cen = app.add_subcommand("census", "classify every poset of a given size");
  cen->add_option("--max-n", max_n, "number of elements")->required();
  cen->add_flag("--twin-free", twin_free_only, "keep only twin-free posets");
  cen->add_flag("--inseparable", inseparable_only, "keep only inseparable posets");
  cen->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* ren = app.add_subcommand("render", "draw a representation");
  ren->add_option("--rep", rep_path, "representation JSON file")->required();
  ren->add_option("--format", format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
  ren->add_option("--out", out_path, "write drawing here instead of stdout");

  auto* asn = app.add_subcommand("assign-types", "debug: type assignment at pinned centers");
  asn->add_option("--poset", poset_path, "poset JSON file")->required();
  asn->add_option("--centers", centers_path, "JSON object mapping element to center fraction")
      ->required();
  asn->add_option("--types", types_str, "allowed types");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*rec) {
      Poset p = poset_from_json(load_json_file(poset_path));
      RecognizeResult res = recognize(p, TypeSet::parse(types_str));
      if (const auto* rep = std::get_if<Representation>(&res)) {
        emit(dump_json(rep_to_json(*rep)), out_path);
        return 0;
      }
      emit(dump_json(cert_to_json(std::get<Certificate>(res))), out_path);
      return 2;
    }
    if (*cls) {
      Poset p = poset_from_json(load_json_file(poset_path));
      ClassProfile cp = classify(p);
      std::ostringstream os;
      for (TypeSet s : TypeSet::all_nonempty())
        os << s.str() << std::string(6 - s.str().size(), ' ')
           << (cp.of(s) ? "yes" : "no") << "\n";
      emit(os.str(), out_path);
      return 0;
    }
    if (*ver) {
      Poset p = poset_from_json(load_json_file(poset_path));
      return run_verify(p, load_json_file(file_path), TypeSet::parse(types_str));
    }
    if (*cat) {
      emit(dump_json(poset_to_json(catalog(name))), out_path);
      return 0;
    }
    if (*cen) {
      CensusTable table = census(max_n, twin_free_only, inseparable_only, env_threads());
      emit(census_csv(table), out_path);
      std::cerr << table.rows.size() << " posets\n";
      for (const auto& [region, count] : table.region_counts)
        std::cerr << "region " << region << ": " << count << "\n";
      if (!table.discrepancies.empty()) {
        for (const auto& d : table.discrepancies) std::cerr << "discrepancy: " << d << "\n";
        return 1;
      }
      return 0;
    }
    if (*ren) {
      Representation rep = rep_from_json(load_json_file(rep_path));
      emit(render(rep, format == "svg" ? RenderFormat::svg : RenderFormat::ascii), out_path);
      return 0;
    }
    if (*asn) {
      Poset p = poset_from_json(load_json_file(poset_path));
      json cj = load_json_file(centers_path);
      if (!cj.is_object()) fail(Errc::parse_error, "centers file must be a JSON object");
      std::map<std::string, Dyadic> centers;
      for (const auto& [nm, c] : cj.items()) {
        if (!c.is_string()) fail(Errc::parse_error, "centers must be fraction strings");
        centers.emplace(nm, Dyadic::parse(c.get<std::string>()));
      }
      auto tm = assign_types(p, centers, TypeSet::parse(types_str));
      if (!tm) {
        std::cerr << "no type assignment exists at these centers\n";
        return 2;
      }
      json out = json::object();
      for (const auto& [nm, t] : *tm) out[nm] = std::string(1, type_letter(t));
      emit(dump_json(out), out_path);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
