#include "fibrifier/coset.hpp"

#include <deque>

#include "fibrifier/errors.hpp"

namespace fibrifier {

namespace {

class CosetTable {
 public:
  CosetTable(int columns, long cap) : cols_(columns), cap_(cap) { add(); }

  bool alive(int c) const { return parent_[c] == c; }
  int size() const { return static_cast<int>(table_.size()); }
  long live() const { return live_; }
  int at(int c, int x) const { return table_[c][x]; }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void define(int c, int x) {
    int d = add();
    table_[c][x] = d;
    table_[d][x ^ 1] = c;
  }

  // Scan relator w at coset c, filling in gaps with new cosets.
  void scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][w[j] ^ 1] >= 0) b = table_[b][w[j--] ^ 1];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][w[i] ^ 1] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      int e = queue.front();
      queue.pop_front();
      for (int x = 0; x < cols_; ++x) {
        int f = table_[e][x];
        if (f < 0) continue;
        if (table_[f][x ^ 1] == e) table_[f][x ^ 1] = -1;
        int e1 = rep(e), f1 = rep(f);
        if (table_[e1][x] >= 0)
          merge(f1, table_[e1][x], queue);
        else if (table_[f1][x ^ 1] >= 0)
          merge(e1, table_[f1][x ^ 1], queue);
        else {
          table_[e1][x] = f1;
          table_[f1][x ^ 1] = e1;
        }
      }
    }
  }

 private:
  int add() {
    if (live_ + 1 > cap_) throw CapExceeded("coset enumeration exceeded the cap", cap_);
    int d = size();
    table_.emplace_back(cols_, -1);
    parent_.push_back(d);
    ++live_;
    return d;
  }

  void merge(int a, int b, std::deque<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue.push_back(b);
  }

  int cols_;
  long cap_;
  long live_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

}  // namespace

int FiniteGroup::apply(int e, const std::vector<int>& word) const {
  for (int x : word) e = act[e][x];
  return e;
}

int FiniteGroup::inverse(int a) const {
  int e = 0;
  for (auto it = words[a].rbegin(); it != words[a].rend(); ++it) e = act[e][*it ^ 1];
  return e;
}

FiniteGroup enumerate_group(const GroupPresentation& p, long cap) {
  const int cols = 2 * p.generators;
  FiniteGroup g;
  if (cols == 0) {
    g.order = 1;
    g.act.assign(1, {});
    g.words.assign(1, {});
    return g;
  }
  CosetTable t(cols, cap);
  for (int c = 0; c < t.size(); ++c) {
    for (const auto& r : p.relators) {
      if (!t.alive(c)) break;
      t.scan_and_fill(c, r);
    }
    for (int x = 0; x < cols && t.alive(c); ++x)
      if (t.at(c, x) < 0) t.define(c, x);
  }

  // Renumber live cosets breadth-first from the identity coset so that the
  // numbering and the representative words are shortlex-canonical.
  std::vector<int> number(t.size(), -1);
  std::vector<int> order{0};
  number[0] = 0;
  g.words.push_back({});
  for (std::size_t k = 0; k < order.size(); ++k) {
    int c = order[k];
    for (int x = 0; x < cols; ++x) {
      int d = t.rep(t.at(c, x));
      if (number[d] >= 0) continue;
      number[d] = static_cast<int>(order.size());
      order.push_back(d);
      auto w = g.words[k];
      w.push_back(x);
      g.words.push_back(std::move(w));
    }
  }
  g.order = static_cast<int>(order.size());
  g.act.assign(g.order, std::vector<int>(cols));
  for (int k = 0; k < g.order; ++k)
    for (int x = 0; x < cols; ++x) g.act[k][x] = number[t.rep(t.at(order[k], x))];
  return g;
}

}  // namespace fibrifier
