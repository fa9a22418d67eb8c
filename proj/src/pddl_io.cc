#include "mlcbp/pddl_io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mlcbp {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

UnsupportedFeature::UnsupportedFeature(const std::string& construct)
    : Error("unsupported PDDL feature: " + construct), construct_(construct) {}

namespace {

struct SExpr {
  bool is_list = false;
  std::string token;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  bool is_token(std::string_view t) const { return !is_list && token == t; }
};

[[noreturn]] void fail(const SExpr& at, const std::string& what) {
  throw ParseError(what, at.line, at.column);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Iterative so that deeply nested garbage cannot blow the stack.
std::vector<SExpr> parse_sexprs(std::string_view text) {
  std::vector<SExpr> stack(1);
  stack[0].is_list = true;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    ++i;
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') advance(text[i]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      continue;
    }
    if (c == '(') {
      SExpr node;
      node.is_list = true;
      node.line = line;
      node.column = column;
      stack.push_back(std::move(node));
      advance(c);
      continue;
    }
    if (c == ')') {
      if (stack.size() == 1) throw ParseError("unbalanced ')'", line, column);
      SExpr done = std::move(stack.back());
      stack.pop_back();
      stack.back().items.push_back(std::move(done));
      advance(c);
      continue;
    }
    SExpr tok;
    tok.line = line;
    tok.column = column;
    std::size_t start = i;
    while (i < text.size()) {
      char d = text[i];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      if (static_cast<unsigned char>(d) < 0x21 || static_cast<unsigned char>(d) > 0x7e)
        throw ParseError("invalid character", line, column);
      advance(d);
    }
    tok.token = lower(text.substr(start, i - start));
    stack.back().items.push_back(std::move(tok));
  }
  if (stack.size() != 1) {
    const SExpr& open = stack.back();
    throw ParseError("unterminated '('", open.line, open.column);
  }
  return std::move(stack[0].items);
}

const std::string& token_of(const SExpr& e, const char* what) {
  if (e.is_list) fail(e, std::string("expected ") + what);
  return e.token;
}

bool is_keyword(const std::string& t) { return !t.empty() && t[0] == ':'; }

bool valid_name(const std::string& t) {
  if (t.empty() || t[0] == '?' || t[0] == ':' || t[0] == '-') return false;
  return true;
}

// "a b - t c" -> [(a,t), (b,t), (c,object)]
std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items, std::size_t from,
                                        bool variables) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = from; i < items.size(); ++i) {
    const std::string& t = token_of(items[i], "name");
    if (t == "-") {
      if (i + 1 >= items.size()) fail(items[i], "missing type after '-'");
      if (items[i + 1].is_list) {
        throw UnsupportedFeature("either-types");
      }
      const std::string& type = items[i + 1].token;
      if (!valid_name(type)) fail(items[i + 1], "bad type name '" + type + "'");
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = type;
      if (pending == 0) fail(items[i], "type without names");
      pending = 0;
      ++i;
      continue;
    }
    if (variables) {
      if (t.size() < 2 || t[0] != '?') fail(items[i], "expected variable, got '" + t + "'");
    } else if (!valid_name(t)) {
      fail(items[i], "bad name '" + t + "'");
    }
    out.push_back({t, "object"});
    ++pending;
  }
  return out;
}

void reject_connective(const SExpr& head) {
  static const char* const kUnsupported[] = {"not",    "or",       "imply",    "exists",
                                             "forall", "when",     "=",        "increase",
                                             "decrease", "assign", "either"};
  if (head.is_list) fail(head, "expected predicate name");
  for (const char* k : kUnsupported) {
    if (head.token == k) throw UnsupportedFeature("'" + head.token + "' formula");
  }
}

LiftedAtom parse_lifted_atom(const SExpr& e) {
  if (!e.is_list || e.items.empty()) fail(e, "expected atom");
  reject_connective(e.items[0]);
  LiftedAtom atom;
  atom.predicate = token_of(e.items[0], "predicate");
  if (!valid_name(atom.predicate)) fail(e.items[0], "bad predicate '" + atom.predicate + "'");
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const std::string& t = token_of(e.items[i], "term");
    if (is_keyword(t) || t == "-") fail(e.items[i], "bad term '" + t + "'");
    atom.args.push_back(t);
  }
  return atom;
}

std::vector<LiftedAtom> parse_precondition(const SExpr& e) {
  std::vector<LiftedAtom> out;
  if (!e.is_list) fail(e, "expected precondition formula");
  if (e.items.empty()) return out;
  if (e.items[0].is_token("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const SExpr& c = e.items[i];
      if (c.is_list && !c.items.empty() && c.items[0].is_token("and"))
        fail(c, "nested 'and'");
      if (c.is_list && !c.items.empty() && c.items[0].is_token("not"))
        throw UnsupportedFeature("negative precondition");
      out.push_back(parse_lifted_atom(c));
    }
    return out;
  }
  if (e.items[0].is_token("not")) throw UnsupportedFeature("negative precondition");
  out.push_back(parse_lifted_atom(e));
  return out;
}

void parse_effect(const SExpr& e, std::vector<LiftedAtom>& add, std::vector<LiftedAtom>& del) {
  if (!e.is_list) fail(e, "expected effect formula");
  if (e.items.empty()) return;
  auto one = [&](const SExpr& lit) {
    if (lit.is_list && !lit.items.empty() && lit.items[0].is_token("not")) {
      if (lit.items.size() != 2) fail(lit, "'not' takes one atom");
      del.push_back(parse_lifted_atom(lit.items[1]));
    } else {
      add.push_back(parse_lifted_atom(lit));
    }
  };
  if (e.items[0].is_token("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) one(e.items[i]);
  } else {
    one(e);
  }
}

const std::vector<std::string> kSupportedRequirements = {":strips", ":typing"};

ActionSchema parse_action(const SExpr& e) {
  ActionSchema schema;
  if (e.items.size() < 2) fail(e, "action without name");
  schema.name = token_of(e.items[1], "action name");
  if (!valid_name(schema.name)) fail(e.items[1], "bad action name");
  for (std::size_t i = 2; i < e.items.size(); i += 2) {
    const std::string& key = token_of(e.items[i], "action keyword");
    if (i + 1 >= e.items.size()) fail(e.items[i], "missing value for " + key);
    const SExpr& value = e.items[i + 1];
    if (key == ":parameters") {
      if (!value.is_list) fail(value, "expected parameter list");
      schema.params = parse_typed_list(value.items, 0, true);
    } else if (key == ":precondition") {
      schema.pre = parse_precondition(value);
    } else if (key == ":effect") {
      parse_effect(value, schema.add, schema.del);
    } else {
      throw UnsupportedFeature("action field " + key);
    }
  }
  // Duplicates inside one list carry no meaning.
  auto dedupe = [](std::vector<LiftedAtom>& v) {
    std::vector<LiftedAtom> out;
    for (auto& a : v)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
    v = std::move(out);
  };
  dedupe(schema.pre);
  dedupe(schema.add);
  dedupe(schema.del);
  return schema;
}

const SExpr& single_define(const std::vector<SExpr>& top, std::string_view text) {
  if (top.size() != 1 || !top[0].is_list || top[0].items.empty() ||
      !top[0].items[0].is_token("define")) {
    if (top.empty()) throw ParseError("empty input", 1, 1);
    fail(top[0], "expected a single (define ...) form");
  }
  (void)text;
  return top[0];
}

void check_ground_atom(const GroundAtom& atom, const SExpr& at, const DomainModel& domain,
                       const PlanningProblem& problem) {
  const PredicateDecl* decl = domain.find_predicate(atom.predicate);
  if (decl == nullptr) fail(at, "undeclared predicate '" + atom.predicate + "'");
  if (decl->params.size() != atom.args.size())
    fail(at, "arity mismatch for '" + atom.predicate + "': expected " +
                 std::to_string(decl->params.size()) + ", got " +
                 std::to_string(atom.args.size()));
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    auto type = problem.object_type(domain, atom.args[i]);
    if (!type) fail(at, "undeclared object '" + atom.args[i] + "'");
    if (!domain.is_subtype(*type, decl->params[i].type))
      fail(at, "object '" + atom.args[i] + "' of type " + *type + " where " +
                   decl->params[i].type + " expected");
  }
}

GroundAtom to_ground_atom(const SExpr& e) {
  LiftedAtom a = parse_lifted_atom(e);
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (a.args[i][0] == '?') fail(e.items[i + 1], "variable in ground atom");
  }
  return {a.predicate, a.args};
}

State parse_atom_conjunction(const SExpr& e) {
  State out;
  if (!e.is_list) fail(e, "expected formula");
  if (e.items.empty()) return out;
  if (e.items[0].is_token("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const SExpr& c = e.items[i];
      if (c.is_list && !c.items.empty() && c.items[0].is_token("not"))
        throw UnsupportedFeature("negative goal");
      out.insert(to_ground_atom(c));
    }
    return out;
  }
  if (e.items[0].is_token("not")) throw UnsupportedFeature("negative goal");
  out.insert(to_ground_atom(e));
  return out;
}

void write_typed(std::ostringstream& out, const std::vector<TypedName>& names) {
  // Group consecutive names of the same type.
  for (std::size_t i = 0; i < names.size();) {
    std::size_t j = i;
    while (j < names.size() && names[j].type == names[i].type) {
      out << ' ' << names[j].name;
      ++j;
    }
    out << " - " << names[i].type;
    i = j;
  }
}

void write_atoms(std::ostringstream& out, const std::vector<LiftedAtom>& atoms) {
  for (const auto& a : atoms) out << ' ' << a.str();
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

DomainModel parse_domain(std::string_view text) {
  std::vector<SExpr> top = parse_sexprs(text);
  const SExpr& def = single_define(top, text);
  DomainModel model;
  bool named = false;
  for (std::size_t i = 1; i < def.items.size(); ++i) {
    const SExpr& section = def.items[i];
    if (!section.is_list || section.items.empty()) fail(section, "expected section");
    const std::string& key = token_of(section.items[0], "section keyword");
    if (key == "domain") {
      if (section.items.size() != 2) fail(section, "expected (domain NAME)");
      model.name = token_of(section.items[1], "domain name");
      named = true;
    } else if (key == ":requirements") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const std::string& req = token_of(section.items[k], "requirement");
        if (std::find(kSupportedRequirements.begin(), kSupportedRequirements.end(), req) ==
            kSupportedRequirements.end())
          throw UnsupportedFeature("requirement " + req);
      }
    } else if (key == ":types") {
      for (const auto& t : parse_typed_list(section.items, 1, false)) {
        if (t.name == "object") continue;
        model.types[t.name] = t.type;
      }
    } else if (key == ":constants") {
      model.constants = parse_typed_list(section.items, 1, false);
    } else if (key == ":predicates") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const SExpr& p = section.items[k];
        if (!p.is_list || p.items.empty()) fail(p, "expected predicate declaration");
        PredicateDecl decl;
        decl.name = token_of(p.items[0], "predicate name");
        if (!valid_name(decl.name)) fail(p.items[0], "bad predicate name");
        decl.params = parse_typed_list(p.items, 1, true);
        if (model.find_predicate(decl.name)) fail(p, "duplicate predicate " + decl.name);
        model.predicates.push_back(std::move(decl));
      }
    } else if (key == ":action") {
      model.schemas.push_back(parse_action(section));
    } else {
      throw UnsupportedFeature("section " + key);
    }
  }
  if (!named) fail(def, "missing (domain NAME)");
  for (const auto& [child, parent] : model.types) {
    if (!model.has_type(parent)) fail(def, "unknown parent type " + parent);
  }
  for (const auto& c : model.constants)
    if (!model.has_type(c.type)) fail(def, "unknown type " + c.type);
  for (const auto& p : model.predicates)
    for (const auto& param : p.params)
      if (!model.has_type(param.type)) fail(def, "unknown type " + param.type);
  try {
    model.validate();
  } catch (const ModelError& e) {
    fail(def, e.what());
  }
  return model;
}

PlanningProblem parse_problem(std::string_view text, const DomainModel& domain) {
  std::vector<SExpr> top = parse_sexprs(text);
  const SExpr& def = single_define(top, text);
  PlanningProblem problem;
  const SExpr* init = nullptr;
  const SExpr* goal = nullptr;
  for (std::size_t i = 1; i < def.items.size(); ++i) {
    const SExpr& section = def.items[i];
    if (!section.is_list || section.items.empty()) fail(section, "expected section");
    const std::string& key = token_of(section.items[0], "section keyword");
    if (key == "problem") {
      if (section.items.size() != 2) fail(section, "expected (problem NAME)");
      problem.name = token_of(section.items[1], "problem name");
    } else if (key == ":domain") {
      if (section.items.size() != 2) fail(section, "expected (:domain NAME)");
      problem.domain_name = token_of(section.items[1], "domain name");
    } else if (key == ":requirements") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const std::string& req = token_of(section.items[k], "requirement");
        if (std::find(kSupportedRequirements.begin(), kSupportedRequirements.end(), req) ==
            kSupportedRequirements.end())
          throw UnsupportedFeature("requirement " + req);
      }
    } else if (key == ":objects") {
      problem.objects = parse_typed_list(section.items, 1, false);
      for (const auto& o : problem.objects) {
        if (!domain.has_type(o.type)) fail(section, "unknown type " + o.type);
      }
    } else if (key == ":init") {
      init = &section;
    } else if (key == ":goal") {
      if (section.items.size() != 2) fail(section, "expected a single goal formula");
      goal = &section;
    } else {
      throw UnsupportedFeature("problem section " + key);
    }
  }
  {
    std::set<std::string> seen;
    for (const auto& o : problem.all_objects(domain))
      if (!seen.insert(o.name).second) fail(def, "duplicate object " + o.name);
  }
  if (init != nullptr) {
    for (std::size_t k = 1; k < init->items.size(); ++k) {
      const SExpr& a = init->items[k];
      if (a.is_list && !a.items.empty() && a.items[0].is_token("="))
        throw UnsupportedFeature("numeric fluents");
      GroundAtom atom = to_ground_atom(a);
      check_ground_atom(atom, a, domain, problem);
      problem.init.insert(std::move(atom));
    }
  }
  if (goal != nullptr) {
    problem.goal = parse_atom_conjunction(goal->items[1]);
    for (const auto& atom : problem.goal) check_ground_atom(atom, goal->items[1], domain, problem);
  }
  return problem;
}

std::string write_domain(const DomainModel& model) {
  std::ostringstream out;
  out << "(define (domain " << model.name << ")\n";
  out << "  (:requirements :strips" << (model.types.empty() ? "" : " :typing") << ")\n";
  if (!model.types.empty()) {
    std::vector<TypedName> types;
    for (const auto& [child, parent] : model.types) types.push_back({child, parent});
    out << "  (:types";
    write_typed(out, types);
    out << ")\n";
  }
  if (!model.constants.empty()) {
    out << "  (:constants";
    write_typed(out, model.constants);
    out << ")\n";
  }
  out << "  (:predicates";
  for (const auto& p : model.predicates) {
    out << "\n    (" << p.name;
    if (!p.params.empty()) write_typed(out, p.params);
    out << ')';
  }
  out << ")\n";
  for (const auto& s : model.schemas) {
    out << "  (:action " << s.name << "\n    :parameters (";
    std::ostringstream params;
    if (!s.params.empty()) write_typed(params, s.params);
    std::string p = params.str();
    out << (p.empty() ? p : p.substr(1)) << ")\n";
    out << "    :precondition (and";
    write_atoms(out, s.pre);
    out << ")\n    :effect (and";
    write_atoms(out, s.add);
    for (const auto& d : s.del) out << " (not " << d.str() << ')';
    out << "))\n";
  }
  out << ")\n";
  return out.str();
}

std::string write_problem(const PlanningProblem& problem) {
  std::ostringstream out;
  out << "(define (problem " << (problem.name.empty() ? "p" : problem.name) << ")\n";
  if (!problem.domain_name.empty()) out << "  (:domain " << problem.domain_name << ")\n";
  out << "  (:objects";
  write_typed(out, problem.objects);
  out << ")\n  (:init";
  for (const auto& a : problem.init) out << "\n    " << a.str();
  out << ")\n  (:goal (and";
  for (const auto& a : problem.goal) out << "\n    " << a.str();
  out << ")))\n";
  return out.str();
}

CaseFile parse_case(std::string_view text) {
  std::vector<SExpr> top = parse_sexprs(text);
  CaseFile c;
  bool has_init = false, has_goal = false, has_plan = false;
  for (const SExpr& section : top) {
    if (!section.is_list || section.items.empty()) fail(section, "expected case section");
    const std::string& key = token_of(section.items[0], "section keyword");
    auto atoms = [&](State& into) {
      for (std::size_t k = 1; k < section.items.size(); ++k)
        into.insert(to_ground_atom(section.items[k]));
    };
    if (key == ":init") {
      if (has_init) fail(section, "duplicate :init");
      has_init = true;
      atoms(c.init);
    } else if (key == ":goal") {
      if (has_goal) fail(section, "duplicate :goal");
      has_goal = true;
      atoms(c.goal);
    } else if (key == ":plan") {
      if (has_plan) fail(section, "duplicate :plan");
      has_plan = true;
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        GroundAtom a = to_ground_atom(section.items[k]);
        c.plan.push_back({a.predicate, a.args});
      }
    } else {
      fail(section, "unknown case section " + key);
    }
  }
  if (!has_init || !has_goal || !has_plan) throw ParseError("case needs :init, :goal and :plan", 1, 1);
  if (c.plan.empty()) throw ParseError("case plan is empty", 1, 1);
  return c;
}

std::string write_case(const CaseFile& c) {
  std::ostringstream out;
  out << "(:init";
  for (const auto& a : c.init) out << "\n  " << a.str();
  out << ")\n(:goal";
  for (const auto& a : c.goal) out << "\n  " << a.str();
  out << ")\n(:plan";
  for (const auto& a : c.plan) out << "\n  " << a.str();
  out << ")\n";
  return out.str();
}

Plan parse_plan(std::string_view text) {
  Plan plan;
  for (const SExpr& e : parse_sexprs(text)) {
    if (!e.is_list || e.items.empty()) fail(e, "expected (action args...)");
    Plan::value_type action;
    action.name = token_of(e.items[0], "action name");
    if (!valid_name(action.name)) fail(e.items[0], "bad action name");
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const std::string& t = token_of(e.items[i], "object");
      if (!valid_name(t)) fail(e.items[i], "bad object '" + t + "'");
      action.args.push_back(t);
    }
    plan.push_back(std::move(action));
  }
  return plan;
}

std::string write_plan(const Plan& plan) {
  std::string out;
  for (const auto& a : plan) {
    out += a.str();
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::vector<CaseFile> read_case_library(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".case")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CaseFile> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    try {
      CaseFile c = parse_case(read_file(f));
      c.id = f.stem().string();
      out.push_back(std::move(c));
    } catch (const ParseError& e) {
      throw Error(f.string() + ": " + e.what());
    }
  }
  return out;
}

void write_case_library(const std::filesystem::path& dir, const std::vector<CaseFile>& cases) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "case_%05zu.case", i);
    write_file(dir / name, write_case(cases[i]));
  }
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    char millis[64];
    std::snprintf(millis, sizeof(millis), "%.3f", r.cpu_millis);
    out << r.domain_name << ',' << r.num_cases << ',' << format_double(r.completeness) << ','
        << r.delta << ',' << r.problem_id << ',' << (r.solved ? "true" : "false") << ','
        << r.plan_length << ',' << millis << '\n';
  }
}

std::vector<ExperimentRow> parse_csv(std::string_view text) {
  std::vector<ExperimentRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("bad CSV header", 1, 1);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw ParseError("expected 8 CSV fields", lineno, 1);
    ExperimentRow r;
    try {
      r.domain_name = f[0];
      r.num_cases = std::stoi(f[1]);
      r.completeness = std::stod(f[2]);
      r.delta = std::stoi(f[3]);
      r.problem_id = f[4];
      if (f[5] != "true" && f[5] != "false") throw std::invalid_argument("solved");
      r.solved = f[5] == "true";
      r.plan_length = std::stoi(f[6]);
      r.cpu_millis = std::stod(f[7]);
    } catch (const std::logic_error&) {
      throw ParseError("bad CSV field", lineno, 1);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mlcbp
