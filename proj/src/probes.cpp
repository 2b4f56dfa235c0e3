#include "ietlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>
#include <unordered_map>

namespace ietlab {

namespace {

std::string key_of(const Word& w) {
  std::string k;
  k.reserve(w.size());
  for (Symbol s : w) k.push_back(static_cast<char>(s + 1));
  return k;
}

struct FloatIet {
  std::vector<double> left, translation;
  double total = 1;

  int locate(double x) const {
    const auto it = std::upper_bound(left.begin(), left.end(), x);
    return std::max(0, static_cast<int>(it - left.begin()) - 1);
  }
  double step(double x, int i) const {
    x += translation[i];
    if (x < 0) return 0;
    if (x >= total) return std::nextafter(total, 0.0);
    return x;
  }
};

}  // namespace

std::vector<std::string> FrequencyReport::support(std::size_t start) const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < words.size(); ++k)
    if (frequencies.at(start)[k] > 0) out.push_back(words[k]);
  return out;
}

FrequencyReport birkhoff_frequencies(const CodedSystem& sys, const BirkhoffOptions& options) {
  if (options.iterations < 10'000) throw InputError("birkhoff_frequencies needs at least 10^4 iterations");
  if (options.word_length < 1) throw InputError("word length must be >= 1");
  const Iet& t = sys.iet();
  const Field& f = t.field();
  FloatIet fl;
  for (int i = 0; i < t.size(); ++i) {
    fl.left.push_back(f.to_double(t.left_endpoints()[i]));
    fl.translation.push_back(f.to_double(t.translations()[i]));
  }
  fl.total = f.to_double(t.total());

  FrequencyReport r;
  r.iterations = options.iterations;
  r.word_length = options.word_length;
  r.seed = options.seed;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& c : sys.cylinder_partition(options.word_length)) {
    index.emplace(key_of(c.word), r.words.size());
    r.words.push_back(sys.alphabet().spell(c.word));
  }
  // Keep the CSV/JSON order lexicographic in the spelled words.
  std::vector<std::size_t> order(r.words.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return r.words[a] < r.words[b]; });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
  std::sort(r.words.begin(), r.words.end());
  for (auto& [k, v] : index) v = rank[v];

  r.start_points = options.start_points;
  if (r.start_points.empty()) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> u(0.0, fl.total);
    for (int s = 0; s < options.starts; ++s) r.start_points.push_back(u(rng));
  }

  const int L = options.word_length;
  const auto run = [&](double x) {
    std::vector<long> counts(r.words.size(), 0);
    long rejected = 0;
    std::string window;
    for (long k = 0; k < options.iterations + L - 1; ++k) {
      const int i = fl.locate(x);
      window.push_back(static_cast<char>(i + 1));
      if (static_cast<int>(window.size()) > L) window.erase(window.begin());
      if (static_cast<int>(window.size()) == L) {
        const auto it = index.find(window);
        if (it == index.end()) {
          ++rejected;
        } else {
          ++counts[it->second];
        }
      }
      x = fl.step(x, i);
    }
    const long accepted = options.iterations - rejected;
    std::vector<double> freq(counts.size(), 0.0);
    for (std::size_t k = 0; k < counts.size(); ++k)
      freq[k] = accepted > 0 ? static_cast<double>(counts[k]) / static_cast<double>(accepted) : 0.0;
    return std::pair{freq, rejected};
  };

  std::vector<std::future<std::pair<std::vector<double>, long>>> jobs;
  for (double x : r.start_points) jobs.push_back(std::async(std::launch::async, run, x));
  for (auto& j : jobs) {
    auto [freq, rej] = j.get();
    r.frequencies.push_back(std::move(freq));
    r.rejected.push_back(rej);
  }
  for (std::size_t a = 0; a < r.frequencies.size(); ++a)
    for (std::size_t b = a + 1; b < r.frequencies.size(); ++b)
      for (std::size_t k = 0; k < r.words.size(); ++k)
        r.dispersion = std::max(r.dispersion, std::abs(r.frequencies[a][k] - r.frequencies[b][k]));
  return r;
}

std::string to_csv(const FrequencyReport& r) {
  std::ostringstream out;
  out.precision(12);
  out << "start,x0";
  for (const auto& w : r.words) out << ',' << w;
  out << '\n';
  for (std::size_t s = 0; s < r.frequencies.size(); ++s) {
    out << s << ',' << r.start_points[s];
    for (double v : r.frequencies[s]) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

double RecurrenceReport::estimate() const {
  double k = 0;
  for (const auto& row : rows) k = std::max(k, row.ratio);
  return k;
}

RecurrenceReport linear_recurrence_estimate(const CodedSystem& sys, int n_max, long window) {
  if (n_max < 1) throw InputError("n_max must be >= 1");
  if (window <= n_max) throw InputError("window must exceed n_max");
  RecurrenceReport r;
  r.window = window;
  const Word orbit = sys.code(FieldElement(0), static_cast<int>(window));
  const std::string text = key_of(orbit);
  for (int n = 1; n <= n_max; ++n) {
    struct Seen {
      long last = -1, gap = 0, count = 0;
    };
    std::unordered_map<std::string, Seen> seen;
    for (long p = 0; p + n <= static_cast<long>(text.size()); ++p) {
      Seen& s = seen[text.substr(p, n)];
      if (s.last >= 0) s.gap = std::max(s.gap, p - s.last);
      s.last = p;
      ++s.count;
    }
    RecurrenceRow row;
    row.n = n;
    for (const auto& w : sys.words_of_length(n)) {
      const auto it = seen.find(key_of(w));
      if (it == seen.end() || it->second.count < 2) {
        row.not_recurring.push_back(sys.alphabet().spell(w));
        continue;
      }
      if (it->second.gap > row.max_gap) {
        row.max_gap = it->second.gap;
        row.worst_word = sys.alphabet().spell(w);
      }
    }
    row.ratio = static_cast<double>(row.max_gap) / n;
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string to_csv(const RecurrenceReport& r) {
  std::ostringstream out;
  out << "n,max_gap,ratio,worst_word,not_recurring\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << row.max_gap << ',' << row.ratio << ',' << row.worst_word << ','
        << row.not_recurring.size() << '\n';
  }
  return out.str();
}

}  // namespace ietlab
