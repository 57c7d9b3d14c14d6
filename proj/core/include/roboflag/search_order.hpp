#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace roboflag {

enum class Strategy { kBfs, kDfs, kAstarBfs, kAstarDfs };

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

// Visit-order container for the branch-and-bound loop. BFS pops in
// generation order, DFS explores the most recent expansion first. The A*
// variants sort each sibling group in ascending bound order before insertion
// (stable, so ties keep their expansion order) and otherwise behave like
// BFS/DFS.
template <typename T>
class OpenList {
 public:
  explicit OpenList(Strategy strategy) : strategy_(strategy) {}

  // One expanded sibling group. Bounds are ignored by plain BFS/DFS.
  void push_siblings(std::vector<std::pair<T, double>> siblings) {
    if (strategy_ == Strategy::kAstarBfs || strategy_ == Strategy::kAstarDfs) {
      std::stable_sort(siblings.begin(), siblings.end(),
                       [](const auto& a, const auto& b) {
                         return a.second < b.second;
                       });
    }
    switch (strategy_) {
      case Strategy::kBfs:
      case Strategy::kAstarBfs:
        for (auto& s : siblings) items_.push_back(std::move(s.first));
        break;
      case Strategy::kDfs:
      case Strategy::kAstarDfs:
        // Reversed push so the first sibling is popped first.
        for (auto it = siblings.rbegin(); it != siblings.rend(); ++it) {
          items_.push_back(std::move(it->first));
        }
        break;
    }
  }

  std::optional<T> pop() {
    if (items_.empty()) return std::nullopt;
    T out;
    if (strategy_ == Strategy::kBfs || strategy_ == Strategy::kAstarBfs) {
      out = std::move(items_.front());
      items_.pop_front();
    } else {
      out = std::move(items_.back());
      items_.pop_back();
    }
    return out;
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

 private:
  Strategy strategy_;
  std::deque<T> items_;
};

}  // namespace roboflag
