#include "fjsched/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fjsched/dag.hpp"

namespace fjsched {

Instance::Instance(int machine_count, std::vector<OperationSpec> operations, ArcList precedence)
    : machine_count_(machine_count),
      operations_(std::move(operations)),
      precedence_(std::move(precedence)) {
  if (machine_count_ < 1) throw Error("machine count must be positive");
  const int n = op_count();
  if (n < 1) throw Error("instance needs at least one operation");

  ops_on_machine_.assign(machine_count_ + 1, {});
  for (int idx = 0; idx < n; ++idx) {
    OperationSpec& op = operations_[idx];
    if (op.id != idx + 1)
      throw Error("operation ids must be 1.." + std::to_string(n) + " in order, found " +
                  std::to_string(op.id) + " at position " + std::to_string(idx + 1));
    if (op.eligible.empty())
      throw Error("operation " + std::to_string(op.id) + " has no eligible machine");
    std::sort(op.eligible.begin(), op.eligible.end());
    for (std::size_t e = 0; e < op.eligible.size(); ++e) {
      const auto [k, p] = op.eligible[e];
      if (k < 1 || k > machine_count_)
        throw Error("operation " + std::to_string(op.id) + ": machine " + std::to_string(k) +
                    " out of range 1.." + std::to_string(machine_count_));
      if (p < 1)
        throw Error("operation " + std::to_string(op.id) + ": processing time must be >= 1");
      if (e > 0 && op.eligible[e - 1].first == k)
        throw Error("operation " + std::to_string(op.id) + ": machine " + std::to_string(k) +
                    " listed twice");
      ops_on_machine_[k].push_back(op.id);
    }
  }

  preds_.assign(n + 1, {});
  succs_.assign(n + 1, {});
  std::set<Arc> seen;
  for (const Arc& a : precedence_) {
    if (a.from < 1 || a.from > n || a.to < 1 || a.to > n)
      throw Error("arc (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                  ") references an unknown operation");
    if (a.from == a.to) throw Error("self loop on operation " + std::to_string(a.from));
    if (!seen.insert(a).second)
      throw Error("duplicate arc (" + std::to_string(a.from) + "," + std::to_string(a.to) + ")");
    succs_[a.from].push_back(a.to);
    preds_[a.to].push_back(a.from);
  }
  for (auto& v : preds_) std::sort(v.begin(), v.end());
  for (auto& v : succs_) std::sort(v.begin(), v.end());
  topological_order(n, precedence_);  // throws CycleError
}

std::optional<Time> Instance::processing_time(OpId i, MachineId k) const {
  if (i < 1 || i > op_count()) return std::nullopt;
  for (const auto& [m, p] : op(i).eligible)
    if (m == k) return p;
  return std::nullopt;
}

int Instance::eligible_pair_count() const {
  int total = 0;
  for (const auto& op : operations_) total += static_cast<int>(op.eligible.size());
  return total;
}

// --- canonical text format --------------------------------------------------

namespace {

struct TokenLine {
  int number;
  std::vector<long long> values;
};

std::vector<TokenLine> tokenize(std::string_view text) {
  std::vector<TokenLine> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    TokenLine tl{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      long long value = 0;
      const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
      if (ec != std::errc{} || ptr != line.data() + j)
        throw ParseError(number, "expected an integer, got '" + std::string(line.substr(i, j - i)) + "'");
      tl.values.push_back(value);
      i = j;
    }
    if (!tl.values.empty()) lines.push_back(std::move(tl));
    if (end == text.size()) break;
  }
  return lines;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty instance");

  const auto& header = lines[0];
  if (header.values.size() != 3)
    throw ParseError(header.number, "header must be '<op_count> <machine_count> <arc_count>'");
  const long long n = header.values[0];
  const long long m = header.values[1];
  const long long arcs = header.values[2];
  if (n < 1) throw ParseError(header.number, "op_count must be positive");
  if (m < 1) throw ParseError(header.number, "machine_count must be positive");
  if (arcs < 0) throw ParseError(header.number, "arc_count must be non-negative");
  if (static_cast<long long>(lines.size()) != 1 + n + arcs)
    throw ParseError(lines.back().number,
                     "expected " + std::to_string(n) + " operation lines and " +
                         std::to_string(arcs) + " arc lines, found " +
                         std::to_string(lines.size() - 1) + " data lines");

  std::vector<OperationSpec> ops(n);
  std::vector<bool> defined(n + 1, false);
  for (long long idx = 0; idx < n; ++idx) {
    const auto& line = lines[1 + idx];
    const auto& v = line.values;
    if (v.size() < 2) throw ParseError(line.number, "operation line needs '<op_id> <e> ...'");
    const long long id = v[0];
    const long long e = v[1];
    if (id < 1 || id > n) throw ParseError(line.number, "operation id " + std::to_string(id) + " out of range");
    if (defined[id]) throw ParseError(line.number, "operation " + std::to_string(id) + " defined twice");
    defined[id] = true;
    if (e == 0) throw ParseError(line.number, "operation " + std::to_string(id) + " has no eligible machine");
    if (e < 0 || static_cast<long long>(v.size()) != 2 + 2 * e)
      throw ParseError(line.number, "operation " + std::to_string(id) + ": expected " +
                                        std::to_string(e) + " (machine, time) pairs");
    OperationSpec& op = ops[id - 1];
    op.id = static_cast<OpId>(id);
    for (long long q = 0; q < e; ++q) {
      const long long k = v[2 + 2 * q];
      const long long p = v[3 + 2 * q];
      if (k < 1 || k > m) throw ParseError(line.number, "machine " + std::to_string(k) + " out of range");
      if (p < 1) throw ParseError(line.number, "processing time must be >= 1");
      op.eligible.emplace_back(static_cast<MachineId>(k), static_cast<Time>(p));
    }
  }

  ArcList precedence;
  for (long long a = 0; a < arcs; ++a) {
    const auto& line = lines[1 + n + a];
    if (line.values.size() != 2) throw ParseError(line.number, "arc line must be '<i> <j>'");
    const long long i = line.values[0];
    const long long j = line.values[1];
    if (i < 1 || i > n || j < 1 || j > n)
      throw ParseError(line.number, "arc endpoint out of range");
    precedence.push_back({static_cast<OpId>(i), static_cast<OpId>(j)});
  }

  try {
    return Instance(static_cast<int>(m), std::move(ops), std::move(precedence));
  } catch (const CycleError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << inst.op_count() << ' ' << inst.machine_count() << ' ' << inst.precedence().size() << '\n';
  for (const auto& op : inst.operations()) {
    out << op.id << ' ' << op.eligible.size();
    for (const auto& [k, p] : op.eligible) out << ' ' << k << ' ' << p;
    out << '\n';
  }
  for (const Arc& a : inst.precedence()) out << a.from << ' ' << a.to << '\n';
  return out.str();
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

// --- JSON mirror -------------------------------------------------------------

std::string instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["machine_count"] = inst.machine_count();
  auto& ops = j["operations"] = nlohmann::ordered_json::array();
  for (const auto& op : inst.operations()) {
    nlohmann::ordered_json eligible = nlohmann::ordered_json::object();
    for (const auto& [k, p] : op.eligible) eligible[std::to_string(k)] = p;
    ops.push_back({{"id", op.id}, {"eligible", eligible}});
  }
  auto& arcs = j["precedence"] = nlohmann::ordered_json::array();
  for (const Arc& a : inst.precedence()) arcs.push_back({a.from, a.to});
  return j.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    std::vector<OperationSpec> ops;
    for (const auto& o : j.at("operations")) {
      OperationSpec op;
      op.id = o.at("id").get<int>();
      for (const auto& [key, value] : o.at("eligible").items())
        op.eligible.emplace_back(std::stoi(key), value.get<Time>());
      ops.push_back(std::move(op));
    }
    std::sort(ops.begin(), ops.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    ArcList arcs;
    for (const auto& a : j.at("precedence")) arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
    return Instance(j.at("machine_count").get<int>(), std::move(ops), std::move(arcs));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("instance JSON: ") + e.what());
  }
}

// --- analytics ---------------------------------------------------------------

std::vector<std::vector<OpId>> jobs(const Instance& inst) {
  return weak_components(inst.op_count(), inst.precedence());
}

FlexibilityReport flexibility(const Instance& inst) {
  FlexibilityReport r;
  const auto job_list = jobs(inst);
  const ArcList closure = transitive_closure(inst.precedence(), inst.op_count());

  std::vector<int> job_of(inst.op_count() + 1, 0);
  for (std::size_t j = 0; j < job_list.size(); ++j)
    for (OpId i : job_list[j]) job_of[i] = static_cast<int>(j);
  std::vector<long long> closure_arcs(job_list.size(), 0);
  for (const Arc& a : closure) ++closure_arcs[job_of[a.from]];

  double total = 0.0;
  for (std::size_t j = 0; j < job_list.size(); ++j) {
    const long long n = static_cast<long long>(job_list[j].size());
    double w = 0.0;
    if (n == 1) {
      w = 1.0;
    } else if (n == 2) {
      w = 0.0;
    } else {
      const long long a_min = n - 1;
      const long long a_max = n * (n - 1) / 2;
      w = 1.0 - static_cast<double>(closure_arcs[j] - a_min) / static_cast<double>(a_max - a_min);
    }
    r.per_job_omega1.push_back(w);
    total += w;
  }
  r.job_count = static_cast<int>(job_list.size());
  r.omega1 = total / static_cast<double>(r.job_count);
  r.op_count = inst.op_count();
  r.machine_count = inst.machine_count();
  r.arc_count = static_cast<int>(inst.precedence().size());
  r.sum_eligible = inst.eligible_pair_count();
  const long long denom = static_cast<long long>(r.op_count) * r.machine_count - r.op_count;
  // One machine: every operation is on the only machine, no routing choice.
  r.omega2 = denom == 0 ? 0.0 : static_cast<double>(r.sum_eligible - r.op_count) / static_cast<double>(denom);
  return r;
}

double round2(double value) {
  // The nudge absorbs binary representation error of values like 0.125.
  return std::floor(value * 100.0 + 0.5 + 1e-9) / 100.0;
}

// --- random instances ----------------------------------------------------------

DagShape parse_dag_shape(std::string_view name) {
  if (name == "chain") return DagShape::Chain;
  if (name == "Y" || name == "y") return DagShape::Y;
  if (name == "dag" || name == "arbitrary" || name == "arbitrary-DAG") return DagShape::Arbitrary;
  throw std::invalid_argument("unknown DAG shape '" + std::string(name) + "' (chain|Y|dag)");
}

namespace {

// Arcs for one job over the consecutive ids first..first+size-1.
void job_arcs(DagShape shape, int first, int size, double density, std::mt19937_64& rng,
              ArcList& out) {
  if (size < 2) return;
  switch (shape) {
    case DagShape::Chain:
      for (int i = 0; i + 1 < size; ++i) out.push_back({first + i, first + i + 1});
      return;
    case DagShape::Y: {
      // Two branches merging into a common tail.
      if (size == 2) {
        out.push_back({first, first + 1});
        return;
      }
      const int tail = std::max(1, size / 3);
      const int heads = size - tail;
      const int left = (heads + 1) / 2;
      const int merge = first + heads;
      for (int i = 0; i + 1 < left; ++i) out.push_back({first + i, first + i + 1});
      for (int i = left; i + 1 < heads; ++i) out.push_back({first + i, first + i + 1});
      out.push_back({first + left - 1, merge});
      if (left < heads) out.push_back({first + heads - 1, merge});
      for (int i = heads; i + 1 < size; ++i) out.push_back({first + i, first + i + 1});
      return;
    }
    case DagShape::Arbitrary: {
      std::bernoulli_distribution coin(density);
      ArcList arcs;
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
          if (coin(rng)) arcs.push_back({i + 1, j + 1});
      // Keep the job connected: link each op without a predecessor to an earlier one.
      std::vector<bool> has_pred(size + 1, false);
      for (const Arc& a : arcs) has_pred[a.to] = true;
      for (int j = 2; j <= size; ++j) {
        if (!has_pred[j]) {
          std::uniform_int_distribution<int> pick(1, j - 1);
          arcs.push_back({pick(rng), j});
        }
      }
      for (const Arc& a : transitive_reduction(arcs, size))
        out.push_back({first + a.from - 1, first + a.to - 1});
      return;
    }
  }
}

}  // namespace

Instance generate_random_instance(const RandomInstanceParams& params) {
  if (params.machine_count < 1) throw std::invalid_argument("machine_count must be positive");
  if (params.op_count < 1) throw std::invalid_argument("op_count must be positive");
  if (params.job_count < 1 || params.job_count > params.op_count)
    throw std::invalid_argument("job_count must be in 1..op_count");
  if (!(params.eligibility_probability > 0.0 && params.eligibility_probability <= 1.0))
    throw std::invalid_argument("eligibility probability must be in (0,1]");
  if (!(params.density >= 0.0 && params.density <= 1.0))
    throw std::invalid_argument("density must be in [0,1]");
  if (params.min_time < 1 || params.max_time < params.min_time)
    throw std::invalid_argument("time range must satisfy 1 <= min <= max");

  std::mt19937_64 rng(params.seed);
  std::bernoulli_distribution eligible(params.eligibility_probability);
  std::uniform_int_distribution<Time> time(params.min_time, params.max_time);
  std::uniform_int_distribution<int> machine(1, params.machine_count);

  std::vector<OperationSpec> ops(params.op_count);
  for (int i = 0; i < params.op_count; ++i) {
    ops[i].id = i + 1;
    for (int k = 1; k <= params.machine_count; ++k)
      if (eligible(rng)) ops[i].eligible.emplace_back(k, time(rng));
    if (ops[i].eligible.empty()) ops[i].eligible.emplace_back(machine(rng), time(rng));
  }

  ArcList arcs;
  const int base = params.op_count / params.job_count;
  const int extra = params.op_count % params.job_count;
  int first = 1;
  for (int j = 0; j < params.job_count; ++j) {
    const int size = base + (j < extra ? 1 : 0);
    job_arcs(params.shape, first, size, params.density, rng, arcs);
    first += size;
  }
  return Instance(params.machine_count, std::move(ops), std::move(arcs));
}

}  // namespace fjsched
