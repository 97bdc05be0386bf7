#include "sslc/proof/transcript.hpp"

namespace sslc {

void Transcript::absorb(std::string_view label, const void* data, size_t len) {
    Blake b;
    b.update(state_.data(), state_.size());
    b.update_u64(label.size());
    b.update(label);
    b.update_u64(len);
    b.update(data, len);
    state_ = b.finish();
}

void Transcript::absorb_u64(std::string_view label, uint64_t v) {
    uint8_t buf[8];
    for (int i = 0; i < 8; i++) buf[i] = static_cast<uint8_t>(v >> (8 * i));
    absorb(label, buf, 8);
}

void Transcript::absorb_fes(std::string_view label, const std::vector<Fe>& xs) {
    std::vector<uint8_t> buf(xs.size() * 8);
    for (size_t i = 0; i < xs.size(); i++)
        for (int j = 0; j < 8; j++) buf[i * 8 + j] = static_cast<uint8_t>(xs[i].v >> (8 * j));
    absorb(label, buf.data(), buf.size());
}

void Transcript::absorb_fe2s(std::string_view label, const std::vector<Fe2>& xs) {
    std::vector<Fe> flat;
    flat.reserve(xs.size() * 2);
    for (auto& x : xs) {
        flat.push_back(x.a);
        flat.push_back(x.b);
    }
    absorb_fes(label, flat);
}

uint64_t Transcript::draw_u64(uint64_t ctr) const {
    Blake b;
    b.update(state_.data(), state_.size());
    b.update("draw");
    b.update_u64(ctr);
    Hash32 h = b.finish();
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(h[i]) << (8 * i);
    return v;
}

Fe Transcript::challenge_fe(std::string_view label) {
    absorb(label, "", 0);
    for (uint64_t ctr = 0;; ctr++) {
        uint64_t v = draw_u64(ctr);
        if (v < Fe::P) return Fe::raw(v);
    }
}

Fe2 Transcript::challenge_fe2(std::string_view label) {
    Fe a = challenge_fe(label);
    Fe b = challenge_fe("ext");
    return Fe2{a, b};
}

std::vector<uint32_t> Transcript::challenge_indices(std::string_view label, size_t count,
                                                    uint32_t bound) {
    absorb(label, "", 0);
    std::vector<uint32_t> out;
    out.reserve(count);
    uint64_t ctr = 0;
    uint64_t limit = (uint64_t(1) << 32) - ((uint64_t(1) << 32) % bound);
    while (out.size() < count) {
        uint64_t v = draw_u64(ctr++) & 0xffffffffull;
        if (v < limit) out.push_back(static_cast<uint32_t>(v % bound));
    }
    return out;
}

uint64_t Transcript::grind(unsigned bits) const {
    for (uint64_t nonce = 0;; nonce++) {
        if (check_grind(nonce, bits)) return nonce;
    }
}

bool Transcript::check_grind(uint64_t nonce, unsigned bits) const {
    Blake b;
    b.update(state_.data(), state_.size());
    b.update("pow");
    b.update_u64(nonce);
    Hash32 h = b.finish();
    uint64_t lead = 0;
    for (int i = 0; i < 8; i++) lead |= static_cast<uint64_t>(h[i]) << (8 * i);
    return bits == 0 || (lead & ((uint64_t(1) << bits) - 1)) == 0;
}

}  // namespace sslc
