#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fitscore/error.hpp"

namespace fitscore {

class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            const auto &l = labels_[i];
            if (l.empty())
                throw Error("empty label in alphabet");
            if (l.find_first_of("!?") != std::string::npos)
                throw Error("label '" + l + "' contains a reserved '!' or '?'");
            if (!index_.emplace(l, i).second)
                throw Error("duplicate label '" + l + "'");
        }
    }

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::string &operator[](std::size_t i) const { return labels_[i]; }
    const std::vector<std::string> &labels() const { return labels_; }

    std::optional<std::size_t> find(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t index(std::string_view label) const {
        if (auto i = find(label))
            return *i;
        throw Error("unknown label '" + std::string(label) + "'");
    }

    bool operator==(const Alphabet &o) const { return labels_ == o.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct Transition {
    std::size_t src;
    std::size_t label;
    std::size_t dst;
    auto operator<=>(const Transition &) const = default;
};

// Named states with O(1) lookup. Shared by Lts, ProcessLts and Dfa.
class StateTable {
public:
    std::size_t add(std::string name) {
        if (name.empty())
            throw Error("empty state name");
        auto [it, fresh] = index_.emplace(name, names_.size());
        if (!fresh)
            throw Error("duplicate state '" + name + "'");
        names_.push_back(std::move(name));
        return names_.size() - 1;
    }

    std::optional<std::size_t> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t index(std::string_view name) const {
        if (auto i = find(name))
            return *i;
        throw Error("unknown state '" + std::string(name) + "'");
    }

    std::size_t size() const { return names_.size(); }
    const std::string &operator[](std::size_t i) const { return names_[i]; }
    const std::vector<std::string> &names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

class Lts {
public:
    Lts() = default;
    explicit Lts(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    std::size_t add_state(std::string name) {
        std::size_t i = states_.add(std::move(name));
        initial_flag_.push_back(false);
        out_.emplace_back();
        return i;
    }

    void mark_initial(std::size_t s) {
        check_state(s);
        if (!initial_flag_[s]) {
            initial_flag_[s] = true;
            initial_.insert(std::upper_bound(initial_.begin(), initial_.end(), s), s);
        }
    }

    // Throws on a repeated (src, label, dst) triple: the transition set is a relation.
    void add_transition(std::size_t src, std::size_t label, std::size_t dst) {
        check_state(src);
        check_state(dst);
        if (label >= alphabet_.size())
            throw Error("label index out of range");
        Transition t{src, label, dst};
        auto &row = out_[src];
        auto pos = std::lower_bound(row.begin(), row.end(), t, by_label_target);
        if (pos != row.end() && pos->label == label && pos->dst == dst)
            throw Error("duplicate transition " + states_[src] + " -" + alphabet_[label] + "-> " +
                        states_[dst]);
        row.insert(pos, t);
        transitions_.push_back(t);
    }

    void add_transition(std::string_view src, std::string_view label, std::string_view dst) {
        add_transition(states_.index(src), alphabet_.index(label), states_.index(dst));
    }

    const Alphabet &alphabet() const { return alphabet_; }
    std::size_t state_count() const { return states_.size(); }
    const std::string &state_name(std::size_t i) const { return states_[i]; }
    const StateTable &states() const { return states_; }
    std::size_t state_index(std::string_view name) const { return states_.index(name); }
    const std::vector<std::size_t> &initial() const { return initial_; }
    bool is_initial(std::size_t s) const { return initial_flag_[s]; }
    const std::vector<Transition> &transitions() const { return transitions_; }

    // Out-edges of s ordered by (label index, target).
    const std::vector<Transition> &successors(std::size_t s) const { return out_[s]; }

private:
    static bool by_label_target(const Transition &a, const Transition &b) {
        return std::pair(a.label, a.dst) < std::pair(b.label, b.dst);
    }

    void check_state(std::size_t s) const {
        if (s >= states_.size())
            throw Error("state index out of range");
    }

    Alphabet alphabet_;
    StateTable states_;
    std::vector<bool> initial_flag_;
    std::vector<std::size_t> initial_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<Transition>> out_;
};

enum class Tag { plain, send, receive };

struct TaggedLabel {
    std::size_t label;
    Tag tag;
    auto operator<=>(const TaggedLabel &) const = default;
};

// "a" is plain, "a!" a send and "a?" a receive.
inline TaggedLabel parse_tagged_label(const Alphabet &alphabet, std::string_view text) {
    Tag tag = Tag::plain;
    if (!text.empty() && (text.back() == '!' || text.back() == '?')) {
        tag = text.back() == '!' ? Tag::send : Tag::receive;
        text.remove_suffix(1);
    }
    return {alphabet.index(text), tag};
}

inline std::string format_tagged_label(const Alphabet &alphabet, TaggedLabel t) {
    std::string s = alphabet[t.label];
    if (t.tag == Tag::send)
        s += '!';
    else if (t.tag == Tag::receive)
        s += '?';
    return s;
}

struct TaggedTransition {
    std::size_t src;
    TaggedLabel label;
    std::size_t dst;
    auto operator<=>(const TaggedTransition &) const = default;
};

class ProcessLts {
public:
    ProcessLts() = default;
    ProcessLts(std::string name, Alphabet alphabet)
        : name_(std::move(name)), alphabet_(std::move(alphabet)) {}

    std::size_t add_state(std::string name) {
        std::size_t i = states_.add(std::move(name));
        initial_flag_.push_back(false);
        out_.emplace_back();
        return i;
    }

    void mark_initial(std::size_t s) {
        if (s >= states_.size())
            throw Error("state index out of range");
        if (!initial_flag_[s]) {
            initial_flag_[s] = true;
            initial_.insert(std::upper_bound(initial_.begin(), initial_.end(), s), s);
        }
    }

    void add_transition(std::size_t src, TaggedLabel label, std::size_t dst) {
        if (src >= states_.size() || dst >= states_.size())
            throw Error("state index out of range");
        if (label.label >= alphabet_.size())
            throw Error("label index out of range");
        TaggedTransition t{src, label, dst};
        auto &row = out_[src];
        auto pos = std::lower_bound(row.begin(), row.end(), t);
        if (pos != row.end() && *pos == t)
            throw Error("duplicate transition " + states_[src] + " -" +
                        format_tagged_label(alphabet_, label) + "-> " + states_[dst] + " in process " +
                        name_);
        row.insert(pos, t);
        transitions_.push_back(t);
    }

    void add_transition(std::string_view src, std::string_view label, std::string_view dst) {
        add_transition(states_.index(src), parse_tagged_label(alphabet_, label), states_.index(dst));
    }

    const std::string &name() const { return name_; }
    const Alphabet &alphabet() const { return alphabet_; }
    std::size_t state_count() const { return states_.size(); }
    const std::string &state_name(std::size_t i) const { return states_[i]; }
    const StateTable &states() const { return states_; }
    const std::vector<std::size_t> &initial() const { return initial_; }
    const std::vector<TaggedTransition> &transitions() const { return transitions_; }
    const std::vector<TaggedTransition> &successors(std::size_t s) const { return out_[s]; }

private:
    std::string name_;
    Alphabet alphabet_;
    StateTable states_;
    std::vector<bool> initial_flag_;
    std::vector<std::size_t> initial_;
    std::vector<TaggedTransition> transitions_;
    std::vector<std::vector<TaggedTransition>> out_;
};

} // namespace fitscore
