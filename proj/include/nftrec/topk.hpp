#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace nftrec {

/// Keeps the k best items of a stream under a strict weak order `Better`
/// (better(a, b) == a ranks ahead of b). The heap front is the worst kept
/// item, so each push costs O(log k).
template <typename T, typename Better>
class TopK {
public:
    TopK(std::size_t k, Better better) : k_(k), better_(std::move(better)) { heap_.reserve(k); }

    void push(const T& item) {
        if (k_ == 0) return;
        if (heap_.size() < k_) {
            heap_.push_back(item);
            std::push_heap(heap_.begin(), heap_.end(), better_);
        } else if (better_(item, heap_.front())) {
            std::pop_heap(heap_.begin(), heap_.end(), better_);
            heap_.back() = item;
            std::push_heap(heap_.begin(), heap_.end(), better_);
        }
    }

    /// Best first. Leaves the selector empty.
    std::vector<T> take_sorted() {
        std::sort_heap(heap_.begin(), heap_.end(), better_);
        return std::move(heap_);
    }

private:
    std::size_t k_;
    Better better_;
    std::vector<T> heap_;
};

} // namespace nftrec
