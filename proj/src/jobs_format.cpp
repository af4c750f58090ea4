#include "fjsched/jobs_format.hpp"

#include <algorithm>
#include <string>

namespace fjsched {

namespace {

class Tokens {
 public:
  explicit Tokens(std::string_view text) {
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (c == '\n') {
        ++line;
        ++i;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else {
        const std::size_t begin = i;
        while (i < text.size() && text[i] != '#' && text[i] != '\n' && text[i] != ' ' && text[i] != '\t' &&
               text[i] != '\r')
          ++i;
        items_.emplace_back(std::string(text.substr(begin, i - begin)), line);
      }
    }
  }

  long long next(const char* what) {
    if (pos_ >= items_.size()) throw ParseError(items_.empty() ? 1 : items_.back().second, std::string("missing ") + what);
    const auto& [tok, line] = items_[pos_++];
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || used == 0) throw ParseError(line, std::string("expected integer ") + what + ", got '" + tok + "'");
    return v;
  }

  int line() const { return pos_ == 0 ? 1 : items_[pos_ - 1].second; }
  bool done() const { return pos_ == items_.size(); }

 private:
  std::vector<std::pair<std::string, int>> items_;
  std::size_t pos_ = 0;
};

}  // namespace

Instance parse_jobs_format(std::string_view text) {
  Tokens tk(text);
  const long long job_count = tk.next("job count");
  const long long machine_count = tk.next("machine count");
  if (job_count < 1 || machine_count < 1) throw ParseError(tk.line(), "job and machine counts must be positive");

  struct RawOp {
    std::vector<std::pair<long long, long long>> eligible;
    int line;
  };
  std::vector<RawOp> ops;
  ArcList arcs;
  bool zero_based = false;
  for (long long job = 0; job < job_count; ++job) {
    const long long count = tk.next("operation count");
    if (count < 1) throw ParseError(tk.line(), "job " + std::to_string(job + 1) + " has no operations");
    const int offset = static_cast<int>(ops.size());
    for (long long o = 0; o < count; ++o) {
      RawOp op;
      const long long e = tk.next("eligible machine count");
      op.line = tk.line();
      if (e < 1) throw ParseError(op.line, "operation without eligible machines");
      for (long long t = 0; t < e; ++t) {
        const long long k = tk.next("machine id");
        const long long p = tk.next("processing time");
        if (k == 0) zero_based = true;
        op.eligible.emplace_back(k, p);
      }
      ops.push_back(std::move(op));
    }
    const long long arc_count = tk.next("arc count");
    for (long long a = 0; a < arc_count; ++a) {
      const long long i = tk.next("arc tail");
      const long long j = tk.next("arc head");
      if (i < 1 || i > count || j < 1 || j > count)
        throw ParseError(tk.line(), "arc " + std::to_string(i) + " " + std::to_string(j) + " outside job " +
                                        std::to_string(job + 1));
      arcs.push_back({offset + static_cast<int>(i), offset + static_cast<int>(j)});
    }
  }
  if (!tk.done()) throw ParseError(tk.line(), "trailing data after the last job");

  std::vector<OperationSpec> specs;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    OperationSpec spec{static_cast<OpId>(i + 1), {}};
    for (auto [k, p] : ops[i].eligible) {
      const long long machine = zero_based ? k + 1 : k;
      if (machine < 1 || machine > machine_count)
        throw ParseError(ops[i].line, "machine id " + std::to_string(k) + " out of range");
      spec.eligible.emplace_back(static_cast<MachineId>(machine), static_cast<Time>(p));
    }
    std::sort(spec.eligible.begin(), spec.eligible.end());
    specs.push_back(std::move(spec));
  }
  try {
    return Instance(static_cast<int>(machine_count), std::move(specs), std::move(arcs));
  } catch (const CycleError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace fjsched
