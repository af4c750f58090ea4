#include "fjsched/model_export.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace fjsched {

std::string x_var(OpId i, MachineId k, int r) {
  return "x_" + std::to_string(i) + "_" + std::to_string(k) + "_" + std::to_string(r);
}
std::string s_var(OpId i) { return "s_" + std::to_string(i); }
std::string h_var(MachineId k, int r) { return "h_" + std::to_string(k) + "_" + std::to_string(r); }
std::string pp_var(OpId i) { return "pp_" + std::to_string(i); }
std::string a_interval(OpId i, MachineId k, int r) {
  return "a_" + std::to_string(i) + "_" + std::to_string(k) + "_" + std::to_string(r);
}
std::string o_interval(OpId i) { return "o_" + std::to_string(i); }

namespace {

int capacity(const Instance& inst, MachineId k) { return static_cast<int>(inst.eligible_ops(k).size()); }

std::string alpha_text(LearningRate alpha) {
  std::ostringstream out;
  out << alpha.value();
  return out.str();
}

}  // namespace

std::vector<VariableInfo> milp_variables(const Instance& inst) {
  std::vector<VariableInfo> vars;
  for (const auto& op : inst.operations())
    for (const auto& [k, p] : op.eligible)
      for (int r = 1; r <= capacity(inst, k); ++r)
        vars.push_back({x_var(op.id, k, r), VarKind::Binary,
                        "operation " + std::to_string(op.id) + " is position " + std::to_string(r) +
                            " on machine " + std::to_string(k)});
  for (OpId i = 1; i <= inst.op_count(); ++i)
    vars.push_back({s_var(i), VarKind::Continuous, "start of operation " + std::to_string(i)});
  for (MachineId k = 1; k <= inst.machine_count(); ++k)
    for (int r = 1; r <= capacity(inst, k); ++r)
      vars.push_back({h_var(k, r), VarKind::Continuous,
                      "start of position " + std::to_string(r) + " on machine " + std::to_string(k)});
  for (OpId i = 1; i <= inst.op_count(); ++i)
    vars.push_back({pp_var(i), VarKind::Continuous, "actual processing time of operation " + std::to_string(i)});
  vars.push_back({kMakespanVar, VarKind::Continuous, "makespan"});
  return vars;
}

namespace {

class MilpBuilder {
 public:
  explicit MilpBuilder(const Instance& inst) : vars_(milp_variables(inst)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) index_.emplace(vars_[i].name, static_cast<int>(i));
  }

  int var(const std::string& name) const { return index_.at(name); }

  void row(std::string name, std::vector<LinearTerm> terms, Sense sense, std::int64_t rhs) {
    rows_.push_back({std::move(name), std::move(terms), sense, rhs});
  }

  std::vector<VariableInfo> take_vars() { return std::move(vars_); }
  std::vector<LinearRow> take_rows() { return std::move(rows_); }

 private:
  std::vector<VariableInfo> vars_;
  std::unordered_map<std::string, int> index_;
  std::vector<LinearRow> rows_;
};

void append_term(std::ostringstream& out, std::int64_t coef, const std::string& name, bool first) {
  if (coef < 0) {
    out << (first ? "- " : " - ");
  } else if (!first) {
    out << " + ";
  }
  const std::int64_t mag = coef < 0 ? -coef : coef;
  if (mag != 1) out << mag << ' ';
  out << name;
}

std::string render_lp(const Instance& inst, LearningRate alpha, const std::vector<VariableInfo>& vars,
                      const std::vector<LinearRow>& rows, std::int64_t big_m) {
  std::ostringstream out;
  out << "\\ Flexible job shop with sequencing flexibility and position-based learning\n"
      << "\\ operations " << inst.op_count() << ", machines " << inst.machine_count() << ", alpha "
      << alpha_text(alpha) << ", M " << big_m << "\n"
      << "Minimize\n obj: " << kMakespanVar << "\nSubject To\n";
  for (const LinearRow& row : rows) {
    out << ' ' << row.name << ':';
    std::ostringstream line;
    for (std::size_t t = 0; t < row.terms.size(); ++t) {
      // Keep physical lines short; LP readers accept continuation lines.
      if (t > 0 && t % 8 == 0) line << "\n   ";
      append_term(line, row.terms[t].coef, vars[row.terms[t].var].name, t == 0);
    }
    out << ' ' << line.str();
    switch (row.sense) {
      case Sense::LessEqual: out << " <= "; break;
      case Sense::Equal: out << " = "; break;
      case Sense::GreaterEqual: out << " >= "; break;
    }
    out << row.rhs << '\n';
  }
  out << "Binaries\n";
  int on_line = 0;
  for (const auto& v : vars) {
    if (v.kind != VarKind::Binary) continue;
    out << ' ' << v.name;
    if (++on_line == 10) {
      out << '\n';
      on_line = 0;
    }
  }
  if (on_line != 0) out << '\n';
  out << "End\n";
  return out.str();
}

}  // namespace

MilpArtifact emit_milp(const Instance& inst, LearningRate alpha) {
  MilpBuilder b(inst);
  const int n = inst.op_count();
  const int m = inst.machine_count();

  std::int64_t sum_p = 0;
  for (const auto& op : inst.operations())
    for (const auto& [k, p] : op.eligible) sum_p += p;
  const std::int64_t big_m = 100 * sum_p;

  // Learning-adjusted time of i at position r on k.
  auto duration = [&](OpId i, MachineId k, int r) { return psi(alpha, *inst.processing_time(i, k), r); };

  for (OpId i = 1; i <= n; ++i) {
    std::vector<LinearTerm> terms;
    for (const auto& [k, p] : inst.op(i).eligible)
      for (int r = 1; r <= capacity(inst, k); ++r) terms.push_back({1, b.var(x_var(i, k, r))});
    b.row("assign_" + std::to_string(i), std::move(terms), Sense::Equal, 1);
  }
  for (MachineId k = 1; k <= m; ++k) {
    const auto& ops = inst.eligible_ops(k);
    for (int r = 1; r <= capacity(inst, k); ++r) {
      std::vector<LinearTerm> terms;
      for (OpId i : ops) terms.push_back({1, b.var(x_var(i, k, r))});
      b.row("pos_" + std::to_string(k) + "_" + std::to_string(r), std::move(terms), Sense::LessEqual, 1);
    }
  }
  for (MachineId k = 1; k <= m; ++k) {
    const auto& ops = inst.eligible_ops(k);
    for (int r = 1; r < capacity(inst, k); ++r) {
      std::vector<LinearTerm> terms;
      for (OpId i : ops) terms.push_back({1, b.var(x_var(i, k, r + 1))});
      for (OpId i : ops) terms.push_back({-1, b.var(x_var(i, k, r))});
      b.row("noskip_" + std::to_string(k) + "_" + std::to_string(r), std::move(terms), Sense::LessEqual, 0);
    }
  }
  for (OpId i = 1; i <= n; ++i) {
    std::vector<LinearTerm> terms{{1, b.var(pp_var(i))}};
    for (const auto& [k, p] : inst.op(i).eligible)
      for (int r = 1; r <= capacity(inst, k); ++r) terms.push_back({-duration(i, k, r), b.var(x_var(i, k, r))});
    b.row("ptime_" + std::to_string(i), std::move(terms), Sense::Equal, 0);
  }
  for (MachineId k = 1; k <= m; ++k) {
    const auto& ops = inst.eligible_ops(k);
    const int cap = capacity(inst, k);
    for (int r = 1; r <= cap; ++r) {
      std::vector<LinearTerm> terms{{1, b.var(h_var(k, r))}};
      for (OpId i : ops) terms.push_back({duration(i, k, r), b.var(x_var(i, k, r))});
      if (r < cap) {
        terms.push_back({-1, b.var(h_var(k, r + 1))});
        b.row("mseq_" + std::to_string(k) + "_" + std::to_string(r), std::move(terms), Sense::LessEqual, 0);
      } else {
        terms.push_back({-1, b.var(kMakespanVar)});
        b.row("mkspan_" + std::to_string(k), std::move(terms), Sense::LessEqual, 0);
      }
    }
  }
  for (const Arc& a : inst.precedence()) {
    b.row("prec_" + std::to_string(a.from) + "_" + std::to_string(a.to),
          {{1, b.var(s_var(a.from))}, {1, b.var(pp_var(a.from))}, {-1, b.var(s_var(a.to))}}, Sense::LessEqual, 0);
  }
  // If i holds position r on k and j a later position, j starts after i ends.
  for (OpId i = 1; i <= n; ++i) {
    for (OpId j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (const auto& [k, p] : inst.op(i).eligible) {
        if (!inst.eligible(j, k)) continue;
        const int cap = capacity(inst, k);
        for (int r = 1; r < cap; ++r) {
          std::vector<LinearTerm> terms{{1, b.var(s_var(i))}, {1, b.var(pp_var(i))}, {big_m, b.var(x_var(i, k, r))}};
          for (int t = r + 1; t <= cap; ++t) terms.push_back({big_m, b.var(x_var(j, k, t))});
          terms.push_back({-1, b.var(s_var(j))});
          b.row("disj_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k) + "_" +
                    std::to_string(r),
                std::move(terms), Sense::LessEqual, 2 * big_m);
        }
      }
    }
  }
  for (OpId i = 1; i <= n; ++i) {
    for (const auto& [k, p] : inst.op(i).eligible) {
      for (int r = 1; r <= capacity(inst, k); ++r) {
        const std::string suffix = std::to_string(i) + "_" + std::to_string(k) + "_" + std::to_string(r);
        b.row("linkA_" + suffix, {{1, b.var(h_var(k, r))}, {big_m, b.var(x_var(i, k, r))}, {-1, b.var(s_var(i))}},
              Sense::LessEqual, big_m);
        b.row("linkB_" + suffix, {{1, b.var(s_var(i))}, {big_m, b.var(x_var(i, k, r))}, {-1, b.var(h_var(k, r))}},
              Sense::LessEqual, big_m);
      }
    }
  }

  MilpArtifact art;
  art.big_m = big_m;
  art.makespan_var = b.var(kMakespanVar);
  art.variables = b.take_vars();
  art.rows = b.take_rows();
  for (const auto& v : art.variables) (v.kind == VarKind::Binary ? art.binary_count : art.continuous_count)++;
  art.constraint_count = static_cast<std::int64_t>(art.rows.size());
  art.lp_text = render_lp(inst, alpha, art.variables, art.rows, big_m);
  return art;
}

std::vector<RowViolation> check_milp_values(const MilpArtifact& milp, const std::map<std::string, double>& values,
                                            double tolerance) {
  std::vector<double> x(milp.variables.size(), 0.0);
  for (std::size_t i = 0; i < milp.variables.size(); ++i)
    if (const auto it = values.find(milp.variables[i].name); it != values.end()) x[i] = it->second;

  std::vector<RowViolation> bad;
  for (const LinearRow& row : milp.rows) {
    double lhs = 0.0;
    for (const LinearTerm& t : row.terms) lhs += static_cast<double>(t.coef) * x[t.var];
    const double rhs = static_cast<double>(row.rhs);
    bool ok = true;
    switch (row.sense) {
      case Sense::LessEqual: ok = lhs <= rhs + tolerance; break;
      case Sense::Equal: ok = std::abs(lhs - rhs) <= tolerance; break;
      case Sense::GreaterEqual: ok = lhs >= rhs - tolerance; break;
    }
    if (!ok) bad.push_back({row.name, lhs, row.rhs});
  }
  // Binaries must be 0/1, continuous variables non-negative.
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool binary = milp.variables[i].kind == VarKind::Binary;
    if (binary && std::abs(x[i]) > tolerance && std::abs(x[i] - 1.0) > tolerance)
      bad.push_back({"binary:" + milp.variables[i].name, x[i], 1});
    if (x[i] < -tolerance) bad.push_back({"bound:" + milp.variables[i].name, x[i], 0});
  }
  return bad;
}

std::string milp_manifest_json(const MilpArtifact& milp) {
  nlohmann::ordered_json j;
  j["counts"] = {{"binary", milp.binary_count},
                 {"continuous", milp.continuous_count},
                 {"constraints", milp.constraint_count}};
  j["big_M"] = milp.big_m;
  auto& vars = j["variables"] = nlohmann::ordered_json::array();
  for (const auto& v : milp.variables)
    vars.push_back({{"name", v.name},
                    {"kind", v.kind == VarKind::Binary ? "binary" : "continuous"},
                    {"meaning", v.meaning}});
  return j.dump(2) + "\n";
}

// --- CP model -----------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string render_cp_native(const Instance& inst, LearningRate alpha, const std::vector<IntervalInfo>& intervals,
                             std::int64_t& constraints) {
  std::ostringstream out;
  out << "# fjsched CP model, one statement per line.\n"
      << "#   interval NAME [optional] [size N]   interval variable\n"
      << "#   minimize EXPR                       objective\n"
      << "#   every other line is one constraint instance\n"
      << "# operations " << inst.op_count() << ", machines " << inst.machine_count() << ", alpha "
      << alpha_text(alpha) << "\n";
  for (const auto& iv : intervals) {
    out << "interval " << iv.name;
    if (iv.optional) out << " optional size " << iv.size;
    out << '\n';
  }
  std::vector<std::string> ends;
  for (OpId i = 1; i <= inst.op_count(); ++i) ends.push_back("endOf(" + o_interval(i) + ")");
  out << "minimize max(" << join(ends) << ")\n";

  constraints = 0;
  for (const Arc& a : inst.precedence()) {
    out << "endBeforeStart(" << o_interval(a.from) << ", " << o_interval(a.to) << ")\n";
    ++constraints;
  }
  for (OpId i = 1; i <= inst.op_count(); ++i) {
    std::vector<std::string> alts;
    for (const auto& [k, p] : inst.op(i).eligible)
      for (int r = 1; r <= capacity(inst, k); ++r) alts.push_back(a_interval(i, k, r));
    out << "alternative(" << o_interval(i) << ", [" << join(alts) << "])\n";
    ++constraints;
  }
  for (MachineId k = 1; k <= inst.machine_count(); ++k) {
    const int cap = capacity(inst, k);
    if (cap == 0) continue;
    std::vector<std::string> slots;
    for (OpId i : inst.eligible_ops(k))
      for (int r = 1; r <= cap; ++r) slots.push_back(a_interval(i, k, r));
    out << "noOverlap([" << join(slots) << "])\n";
    ++constraints;
  }
  for (MachineId k = 1; k <= inst.machine_count(); ++k) {
    const int cap = capacity(inst, k);
    for (int r = 1; r < cap; ++r)
      for (OpId i : inst.eligible_ops(k))
        for (OpId j : inst.eligible_ops(k)) {
          out << "endBeforeStart(" << a_interval(i, k, r) << ", " << a_interval(j, k, r + 1) << ")\n";
          ++constraints;
        }
  }
  for (MachineId k = 1; k <= inst.machine_count(); ++k) {
    const int cap = capacity(inst, k);
    for (int r = 1; r < cap; ++r) {
      std::vector<std::string> later, earlier;
      for (OpId i : inst.eligible_ops(k)) {
        later.push_back("presenceOf(" + a_interval(i, k, r + 1) + ")");
        earlier.push_back("presenceOf(" + a_interval(i, k, r) + ")");
      }
      out << "or(" << join(later) << ") => or(" << join(earlier) << ")\n";
      ++constraints;
    }
  }
  return out.str();
}

std::string render_cp_opl(const Instance& inst, LearningRate alpha, const std::vector<IntervalInfo>& intervals) {
  std::ostringstream out;
  out << "// Flexible job shop with sequencing flexibility and position-based learning\n"
      << "// operations " << inst.op_count() << ", machines " << inst.machine_count() << ", alpha "
      << alpha_text(alpha) << "\n"
      << "using CP;\n\n"
      << "tuple Slot { int op; int machine; int pos; int size; }\n"
      << "tuple Prec { int before; int after; }\n\n"
      << "range Ops = 1.." << inst.op_count() << ";\n"
      << "range Machines = 1.." << inst.machine_count() << ";\n"
      << "int Capacity[Machines] = [";
  for (MachineId k = 1; k <= inst.machine_count(); ++k) out << (k > 1 ? ", " : "") << capacity(inst, k);
  out << "];\n{Prec} Precedences = {";
  for (std::size_t a = 0; a < inst.precedence().size(); ++a)
    out << (a > 0 ? ", " : "") << '<' << inst.precedence()[a].from << ',' << inst.precedence()[a].to << '>';
  out << "};\n{Slot} Slots = {\n";
  bool first = true;
  for (const auto& iv : intervals) {
    if (!iv.optional) continue;
    out << (first ? "  " : ",\n  ") << '<' << iv.op << ',' << iv.machine << ',' << iv.position << ',' << iv.size
        << '>';
    first = false;
  }
  out << "\n};\n\n"
      << "dvar interval o[Ops];\n"
      << "dvar interval a[s in Slots] optional size s.size;\n\n"
      << "minimize max(i in Ops) endOf(o[i]);\n\n"
      << "subject to {\n"
      << "  forall(<i, j> in Precedences) endBeforeStart(o[i], o[j]);\n"
      << "  forall(i in Ops) alternative(o[i], all(s in Slots: s.op == i) a[s]);\n"
      << "  forall(k in Machines: Capacity[k] > 0) noOverlap(all(s in Slots: s.machine == k) a[s]);\n"
      << "  forall(s1 in Slots, s2 in Slots: s2.machine == s1.machine && s2.pos == s1.pos + 1)\n"
      << "    endBeforeStart(a[s1], a[s2]);\n"
      << "  forall(k in Machines, r in 1..Capacity[k] - 1)\n"
      << "    or(s in Slots: s.machine == k && s.pos == r + 1) presenceOf(a[s])\n"
      << "      => or(s in Slots: s.machine == k && s.pos == r) presenceOf(a[s]);\n"
      << "}\n";
  return out.str();
}

}  // namespace

CpArtifact emit_cp(const Instance& inst, LearningRate alpha, CpSyntax syntax) {
  CpArtifact art;
  for (OpId i = 1; i <= inst.op_count(); ++i) art.intervals.push_back({o_interval(i), false, 0, i, 0, 0});
  for (const auto& op : inst.operations())
    for (const auto& [k, p] : op.eligible)
      for (int r = 1; r <= capacity(inst, k); ++r)
        art.intervals.push_back({a_interval(op.id, k, r), true, psi(alpha, p, r), op.id, k, r});
  art.interval_count = static_cast<std::int64_t>(art.intervals.size());

  std::int64_t constraints = 0;
  const std::string native = render_cp_native(inst, alpha, art.intervals, constraints);
  art.constraint_count = constraints;
  art.model_text = syntax == CpSyntax::Native ? native : render_cp_opl(inst, alpha, art.intervals);
  return art;
}

std::string cp_manifest_json(const CpArtifact& cp) {
  nlohmann::ordered_json j;
  j["counts"] = {{"interval", cp.interval_count}, {"constraints", cp.constraint_count}};
  auto& ivs = j["intervals"] = nlohmann::ordered_json::array();
  for (const auto& iv : cp.intervals) {
    nlohmann::ordered_json e{{"name", iv.name}, {"optional", iv.optional}};
    if (iv.optional) {
      e["size"] = iv.size;
      e["op"] = iv.op;
      e["machine"] = iv.machine;
      e["position"] = iv.position;
    } else {
      e["op"] = iv.op;
    }
    ivs.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

ModelSizes count_model_sizes(const Instance& inst) {
  ModelSizes s;
  const std::int64_t n = inst.op_count();
  std::int64_t sum_cap = 0;
  std::int64_t used_machines = 0;
  std::int64_t pos_pairs = 0;     // sum of (cap - 1)
  std::int64_t disj = 0;          // ordered pairs i != j sharing k, times (cap - 1)
  std::int64_t cp_ordering = 0;   // all ordered pairs incl. i == j, times (cap - 1)
  for (MachineId k = 1; k <= inst.machine_count(); ++k) {
    const std::int64_t cap = static_cast<std::int64_t>(inst.eligible_ops(k).size());
    s.binary += cap * cap;
    sum_cap += cap;
    if (cap > 0) {
      ++used_machines;
      pos_pairs += cap - 1;
      disj += cap * (cap - 1) * (cap - 1);
      cp_ordering += cap * cap * (cap - 1);
    }
  }
  const std::int64_t arcs = static_cast<std::int64_t>(inst.precedence().size());
  s.interval = s.binary + n;
  s.continuous = n + sum_cap + n + 1;
  // assign + pos + noskip + ptime + (mseq + mkspan) + prec + disj + linkA/linkB
  s.milp_constraints = n + sum_cap + pos_pairs + n + sum_cap + arcs + disj + 2 * s.binary;
  // endBeforeStart(o) + alternative + noOverlap + position ordering + no-gap
  s.cp_constraints = arcs + n + used_machines + cp_ordering + pos_pairs;
  return s;
}

}  // namespace fjsched
