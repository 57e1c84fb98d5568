#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace datadesc {

/// Insertion-ordered name -> value map. Duplicate names can be stored (so that
/// invariant checks can see them); lookups return the first match.
template <class T>
class NamedList {
public:
    using value_type = std::pair<std::string, T>;
    using iterator = typename std::vector<value_type>::iterator;
    using const_iterator = typename std::vector<value_type>::const_iterator;

    NamedList() = default;
    NamedList(std::initializer_list<value_type> items) : items_(items) {}

    T* find(std::string_view name) {
        auto it = std::find_if(items_.begin(), items_.end(),
                               [&](const value_type& item) { return item.first == name; });
        return it == items_.end() ? nullptr : &it->second;
    }
    const T* find(std::string_view name) const {
        return const_cast<NamedList*>(this)->find(name);
    }
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    T& insert_or_assign(std::string name, T value) {
        if (T* existing = find(name)) {
            *existing = std::move(value);
            return *existing;
        }
        return push_back(std::move(name), std::move(value));
    }
    T& push_back(std::string name, T value) {
        items_.emplace_back(std::move(name), std::move(value));
        return items_.back().second;
    }
    bool erase(std::string_view name) {
        auto it = std::find_if(items_.begin(), items_.end(),
                               [&](const value_type& item) { return item.first == name; });
        if (it == items_.end()) return false;
        items_.erase(it);
        return true;
    }

    iterator begin() { return items_.begin(); }
    iterator end() { return items_.end(); }
    const_iterator begin() const { return items_.begin(); }
    const_iterator end() const { return items_.end(); }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    bool operator==(const NamedList&) const = default;

private:
    std::vector<value_type> items_;
};

} // namespace datadesc
