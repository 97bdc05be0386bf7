#include "sslc/query.hpp"

#include <algorithm>

#include <json.hpp>

namespace sslc {

std::array<Fe, 8> QuerySpec::encoding() const {
    auto a = account.limbs();
    return {Fe(static_cast<uint64_t>(predicate)), a[0], a[1], a[2], a[3], a[4],
            Fe(payload_tag), Fe(static_cast<uint64_t>(finalize))};
}

Digest QuerySpec::digest() const {
    auto e = encoding();
    return poseidon::sponge(e, DomainTags::SPEC);
}

std::string QuerySpec::to_json() const {
    nlohmann::ordered_json j;
    j["predicate"] = predicate == Predicate::ACCOUNT_TOUCH ? "account_touch" : "payload_tag";
    j["account"] = account.to_hex();
    j["payload_tag"] = payload_tag;
    j["map_kind"] = "sum_amount_and_count";
    j["reduce_kind"] = "fold_sum_count";
    j["finalize"] = finalize == Finalize::AVERAGE ? "average"
                    : finalize == Finalize::TOTAL ? "total"
                                                  : "count";
    return j.dump();
}

QuerySpec QuerySpec::from_json(const std::string& body) {
    auto j = nlohmann::json::parse(body);
    QuerySpec s;
    std::string pred = j.at("predicate").get<std::string>();
    if (pred == "account_touch")
        s.predicate = Predicate::ACCOUNT_TOUCH;
    else if (pred == "payload_tag")
        s.predicate = Predicate::PAYLOAD_TAG;
    else
        throw std::runtime_error("unknown predicate: " + pred);
    if (!AccountId::from_hex(j.at("account").get<std::string>(), s.account))
        throw std::runtime_error("bad account hex");
    s.payload_tag = j.at("payload_tag").get<uint32_t>();
    if (j.at("map_kind").get<std::string>() != "sum_amount_and_count")
        throw std::runtime_error("unknown map_kind");
    if (j.at("reduce_kind").get<std::string>() != "fold_sum_count")
        throw std::runtime_error("unknown reduce_kind");
    std::string fin = j.at("finalize").get<std::string>();
    if (fin == "average")
        s.finalize = Finalize::AVERAGE;
    else if (fin == "total")
        s.finalize = Finalize::TOTAL;
    else if (fin == "count")
        s.finalize = Finalize::COUNT;
    else
        throw std::runtime_error("unknown finalize: " + fin);
    return s;
}

std::pair<PartialResult, std::vector<std::pair<Transaction, MerklePath>>> map_block(
    const Block& block, const QuerySpec& spec) {
    std::vector<size_t> hit;
    for (size_t i = 0; i < block.transactions.size(); i++)
        if (spec.matches(block.transactions[i])) hit.push_back(i);

    PartialResult pr;
    std::vector<std::pair<Transaction, MerklePath>> relevant;
    if (hit.empty()) return {pr, relevant};

    TxTree tree = build_tree(block.leaf_digests());
    relevant.reserve(hit.size());
    for (size_t i : hit) {
        pr.sum += block.transactions[i].amount;
        pr.count += 1;
        relevant.emplace_back(block.transactions[i], open(tree, i));
    }
    std::sort(relevant.begin(), relevant.end(),
              [](const auto& a, const auto& b) { return a.first.tx_hash < b.first.tx_hash; });
    return {pr, relevant};
}

QueryResult reduce_all(const std::vector<PartialResult>& partials, const QuerySpec& spec) {
    uint64_t sum = 0, count = 0;
    for (const auto& p : partials) {
        sum += p.sum;
        count += p.count;
    }
    QueryResult r;
    r.k = count;
    switch (spec.finalize) {
        case Finalize::AVERAGE:
            if (count == 0) throw EmptyQuery();
            r.value_numerator = sum;
            r.value_denominator = count;
            break;
        case Finalize::TOTAL:
            r.value_numerator = sum;
            r.value_denominator = 1;
            break;
        case Finalize::COUNT:
            r.value_numerator = count;
            r.value_denominator = 1;
            break;
    }
    return r;
}

QueryResult evaluate_native(const Chain& chain, const QuerySpec& spec) {
    std::vector<PartialResult> partials;
    partials.reserve(chain.blocks.size());
    for (const auto& b : chain.blocks) {
        PartialResult pr;
        for (const auto& tx : b.transactions)
            if (spec.matches(tx)) {
                pr.sum += tx.amount;
                pr.count += 1;
            }
        partials.push_back(pr);
    }
    return reduce_all(partials, spec);
}

}  // namespace sslc
