#include "hhalg/table.hpp"

#include <json.hpp>

namespace hhalg {

void BigradedTable::set(int s, int t, SubquotientPresentation value) {
    if (period_ > 0) t = ((t % period_) + period_) % period_;
    if (value.is_zero())
        entries_.erase({s, t});
    else
        entries_[{s, t}] = std::move(value);
}

SubquotientPresentation BigradedTable::at(int s, int t) const {
    if (period_ > 0) t = ((t % period_) + period_) % period_;
    auto it = entries_.find({s, t});
    return it == entries_.end() ? SubquotientPresentation{} : it->second;
}

std::size_t BigradedTable::total_rank(int s) const {
    std::size_t total = 0;
    for (const auto& [key, value] : entries_)
        if (key.first == s) total += value.free_rank;
    return total;
}

std::string BigradedTable::to_tsv() const {
    std::string out = "s\tt\tfree_rank\ttorsion\n";
    for (const auto& [key, value] : entries_)
        out += std::to_string(key.first) + "\t" + std::to_string(key.second) + "\t" +
               std::to_string(value.free_rank) + "\t" + value.torsion_string() + "\n";
    return out;
}

std::string BigradedTable::to_json() const {
    nlohmann::ordered_json j;
    j["ground"] = ground_.name();
    j["period"] = period_;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& [key, value] : entries_) {
        nlohmann::ordered_json row;
        row["s"] = key.first;
        row["t"] = key.second;
        row["free_rank"] = value.free_rank;
        auto tors = nlohmann::ordered_json::array();
        for (const auto& d : value.torsion) tors.push_back(d.get_str());
        row["torsion"] = tors;
        if (auto it = labels.find(key); it != labels.end()) row["label"] = it->second;
        rows.push_back(row);
    }
    j["entries"] = rows;
    j["notes"] = notes;
    return j.dump(2) + "\n";
}

BigradedTable BigradedTable::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    BigradedTable t(GroundRing::parse(j.at("ground").get<std::string>()), j.at("period").get<int>());
    for (const auto& row : j.at("entries")) {
        SubquotientPresentation p;
        p.free_rank = row.at("free_rank").get<std::size_t>();
        for (const auto& d : row.at("torsion")) p.torsion.emplace_back(d.get<std::string>());
        int s = row.at("s").get<int>(), tt = row.at("t").get<int>();
        t.set(s, tt, p);
        if (row.contains("label")) t.labels[{s, tt}] = row.at("label").get<std::string>();
    }
    for (const auto& n : j.at("notes")) t.notes.push_back(n.get<std::string>());
    return t;
}

} // namespace hhalg
