#include "geoden/serotype.hpp"

#include <algorithm>
#include <cctype>

namespace geoden {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string_view to_string(Serotype s) {
    static constexpr std::array<std::string_view, 4> names = {"DENV1", "DENV2", "DENV3", "DENV4"};
    return names[static_cast<std::size_t>(index_of(s))];
}

std::optional<Serotype> parse_serotype(std::string_view text) {
    const std::string key = lower(trim(text));
    std::string_view digit;
    if (key.size() == 5 && key.starts_with("denv")) {
        digit = std::string_view(key).substr(4);
    } else if (key.size() == 2 && key[0] == 'd') {
        digit = std::string_view(key).substr(1);
    } else if (key.size() == 1) {
        digit = key;
    } else {
        return std::nullopt;
    }
    if (digit[0] < '1' || digit[0] > '4') return std::nullopt;
    return static_cast<Serotype>(digit[0] - '1');
}

std::vector<Serotype> SerotypeSet::members() const {
    std::vector<Serotype> out;
    for (auto s : kAllSerotypes) {
        if (contains(s)) out.push_back(s);
    }
    return out;
}

const std::vector<SerotypeSet>& enumerate_combinations() {
    static const std::vector<SerotypeSet> combos = [] {
        std::vector<SerotypeSet> all;
        for (int m = 1; m < 16; ++m) all.push_back(decode_serotype_set(m));
        std::stable_sort(all.begin(), all.end(), [](SerotypeSet a, SerotypeSet b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a.mask() < b.mask();
        });
        return all;
    }();
    return combos;
}

std::string to_string(SerotypeSet set) {
    if (set.empty()) return "none";
    std::string out;
    for (auto s : set.members()) {
        if (!out.empty()) out += '+';
        out += to_string(s);
    }
    return out;
}

std::optional<SerotypeSet> parse_serotype_list(std::string_view text) {
    SerotypeSet set;
    text = trim(text);
    if (text.empty()) return set;
    while (true) {
        const auto comma = text.find_first_of(",+");
        const auto token = text.substr(0, comma);
        const auto s = parse_serotype(token);
        if (!s) return std::nullopt;
        set.insert(*s);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return set;
}

}  // namespace geoden
