// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "tvws/audit_log.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <mutex>

#include <sodium.h>

#include "tvws/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "audit canonical serialization assumes a little-endian host");

namespace tvws {

namespace {

constexpr char kMagic[8] = {'T', 'V', 'W', 'S', 'A', 'U', 'D', '1'};
constexpr std::uint32_t kVersion = 1;

void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0)
            throw SigningKeyUnavailable("libsodium initialization failed");
    });
}

template <typename T>
void put(std::vector<std::uint8_t>& out, const T& v) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
    out.insert(out.end(), p, p + sizeof(T));
}

void put_optional(std::vector<std::uint8_t>& out, const std::optional<double>& v) {
    put<std::uint8_t>(out, v.has_value() ? 1 : 0);
    if (v)
        put(out, *v);
}

struct Cursor {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos = 0;

    template <typename T>
    T get() {
        if (pos + sizeof(T) > size)
            throw IoError("truncated audit entry");
        T v;
        std::memcpy(&v, data + pos, sizeof(T));
        pos += sizeof(T);
        return v;
    }

    std::optional<double> get_optional() {
        if (get<std::uint8_t>() == 0)
            return std::nullopt;
        return get<double>();
    }
};

} // namespace

std::string to_string(GrantStatus s) {
    switch (s) {
    case GrantStatus::Valid: return "Valid";
    case GrantStatus::Expired: return "Expired";
    case GrantStatus::None: return "None";
    case GrantStatus::WaiverActive: return "WaiverActive";
    }
    return "Unknown";
}

std::string to_string(DecisionBasis b) {
    switch (b) {
    case DecisionBasis::ValidGrant: return "ValidGrant";
    case DecisionBasis::WaiverSensing: return "WaiverSensing";
    case DecisionBasis::Denied: return "Denied";
    }
    return "Unknown";
}

std::vector<std::uint8_t> canonical_bytes(const AuditRecord& record) {
    std::vector<std::uint8_t> out;
    out.reserve(64);
    put(out, record.timestamp_s);
    put(out, record.lat_deg);
    put(out, record.lon_deg);
    put(out, record.channel.index);
    put_optional(out, record.eirp_dbm);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(record.grant_status));
    put_optional(out, record.sensing_confidence);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(record.basis));
    put<std::uint8_t>(out, record.sensing_conflict ? 1 : 0);
    put_optional(out, record.prior_occupancy);
    return out;
}

std::vector<std::uint8_t> SignedAuditEntry::payload() const {
    std::vector<std::uint8_t> out = canonical_bytes(record);
    out.insert(out.end(), prev_hash.begin(), prev_hash.end());
    out.push_back(scheme_id);
    return out;
}

std::vector<std::uint8_t> SignedAuditEntry::entry_bytes() const {
    std::vector<std::uint8_t> out = payload();
    out.insert(out.end(), signature.begin(), signature.end());
    return out;
}

SigningKey SigningKey::generate() {
    ensure_sodium();
    SigningKey key;
    crypto_sign_keypair(key.public_key_.data(), key.secret_key_.data());
    key.valid_ = true;
    return key;
}

SigningKey SigningKey::from_seed(std::uint64_t seed) {
    ensure_sodium();
    std::array<std::uint8_t, crypto_sign_SEEDBYTES> seed_bytes{};
    // Expand the 64-bit seed across the 32-byte Ed25519 seed.
    for (std::size_t i = 0; i < seed_bytes.size(); ++i)
        seed_bytes[i] = static_cast<std::uint8_t>((seed >> ((i % 8) * 8)) ^ (0x5a + 31 * i));
    SigningKey key;
    crypto_sign_seed_keypair(key.public_key_.data(), key.secret_key_.data(), seed_bytes.data());
    key.valid_ = true;
    return key;
}

Signature SigningKey::sign(const std::vector<std::uint8_t>& payload) const {
    if (!valid_)
        throw SigningKeyUnavailable("no signing key loaded");
    Signature sig{};
    crypto_sign_detached(sig.data(), nullptr, payload.data(), payload.size(),
                         secret_key_.data());
    return sig;
}

bool SigningKey::verify(const std::array<std::uint8_t, 32>& public_key,
                        const std::vector<std::uint8_t>& payload, const Signature& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.data(), payload.data(), payload.size(),
                                       public_key.data()) == 0;
}

Digest sha256(const std::vector<std::uint8_t>& bytes) {
    ensure_sodium();
    Digest out{};
    crypto_hash_sha256(out.data(), bytes.data(), bytes.size());
    return out;
}

AuditLog::AuditLog(std::string path, SigningKey key) : path_(std::move(path)), key_(key) {
    if (!key_.can_sign())
        throw SigningKeyUnavailable("audit log requires a signing key");

    std::ifstream probe(path_, std::ios::binary);
    if (probe && probe.peek() != std::ifstream::traits_type::eof()) {
        // Existing log: re-derive the chain head.
        const auto existing = read_all(path_);
        entries_ = existing.size();
        if (!existing.empty())
            head_ = sha256(existing.back().entry_bytes());
        return;
    }
    probe.close();

    std::ofstream os(path_, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot create audit log: " + path_);
    os.write(kMagic, sizeof(kMagic));
    os.write(reinterpret_cast<const char*>(&kVersion), sizeof(kVersion));
    os.write(reinterpret_cast<const char*>(key_.public_key().data()), 32);
    if (!os)
        throw IoError("short write creating audit log: " + path_);
}

SignedAuditEntry AuditLog::append(const AuditRecord& record) {
    SignedAuditEntry entry;
    entry.record = record;
    entry.prev_hash = head_;
    entry.scheme_id = kSchemeEd25519;
    entry.signature = key_.sign(entry.payload());

    const auto bytes = entry.entry_bytes();
    std::ofstream os(path_, std::ios::binary | std::ios::app);
    if (!os)
        throw IoError("cannot append to audit log: " + path_);
    const auto len = static_cast<std::uint32_t>(bytes.size());
    os.write(reinterpret_cast<const char*>(&len), sizeof(len));
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (!os)
        throw IoError("short write appending audit entry: " + path_);

    head_ = sha256(bytes);
    ++entries_;
    return entry;
}

namespace {

struct RawEntry {
    std::vector<std::uint8_t> bytes;
    std::uint64_t offset = 0;
};

std::pair<std::array<std::uint8_t, 32>, std::vector<RawEntry>> read_raw(
    const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open audit log: " + path);
    char magic[8];
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("not an audit log: " + path);
    std::uint32_t version = 0;
    if (!is.read(reinterpret_cast<char*>(&version), sizeof(version)) || version != kVersion)
        throw IoError("unsupported audit log version: " + path);
    std::array<std::uint8_t, 32> public_key{};
    if (!is.read(reinterpret_cast<char*>(public_key.data()), 32))
        throw IoError("truncated audit log header: " + path);

    std::vector<RawEntry> entries;
    std::uint64_t offset = 8 + 4 + 32;
    while (true) {
        std::uint32_t len = 0;
        if (!is.read(reinterpret_cast<char*>(&len), sizeof(len))) {
            if (is.eof())
                break;
            throw IoError("read failure in audit log: " + path);
        }
        RawEntry e;
        e.offset = offset;
        e.bytes.resize(len);
        if (!is.read(reinterpret_cast<char*>(e.bytes.data()), len))
            throw IoError("truncated audit entry: " + path);
        offset += 4 + len;
        entries.push_back(std::move(e));
    }
    return {public_key, std::move(entries)};
}

SignedAuditEntry parse_entry(const std::vector<std::uint8_t>& bytes) {
    Cursor c{bytes.data(), bytes.size()};
    SignedAuditEntry entry;
    entry.record.timestamp_s = c.get<double>();
    entry.record.lat_deg = c.get<double>();
    entry.record.lon_deg = c.get<double>();
    entry.record.channel = ChannelId{c.get<std::uint32_t>()};
    entry.record.eirp_dbm = c.get_optional();
    entry.record.grant_status = static_cast<GrantStatus>(c.get<std::uint8_t>());
    entry.record.sensing_confidence = c.get_optional();
    entry.record.basis = static_cast<DecisionBasis>(c.get<std::uint8_t>());
    entry.record.sensing_conflict = c.get<std::uint8_t>() != 0;
    entry.record.prior_occupancy = c.get_optional();
    for (auto& b : entry.prev_hash)
        b = c.get<std::uint8_t>();
    entry.scheme_id = c.get<std::uint8_t>();
    for (auto& b : entry.signature)
        b = c.get<std::uint8_t>();
    if (c.pos != c.size)
        throw IoError("trailing bytes in audit entry");
    return entry;
}

} // namespace

std::vector<SignedAuditEntry> AuditLog::read_all(const std::string& path) {
    auto [public_key, raw] = read_raw(path);
    (void)public_key;
    std::vector<SignedAuditEntry> out;
    out.reserve(raw.size());
    for (const auto& r : raw)
        out.push_back(parse_entry(r.bytes));
    return out;
}

VerifyResult AuditLog::verify_file(const std::string& path,
                                   std::optional<std::array<std::uint8_t, 32>> public_key) {
    auto [header_key, raw] = read_raw(path);
    const auto key = public_key.value_or(header_key);

    VerifyResult result;
    result.entries = raw.size();
    Digest expected_prev = kGenesisDigest;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        SignedAuditEntry entry;
        try {
            entry = parse_entry(raw[i].bytes);
        } catch (const IoError& e) {
            result.ok = false;
            result.first_bad_index = i;
            result.first_bad_offset = raw[i].offset;
            result.reason = e.what();
            return result;
        }
        const char* failure = nullptr;
        if (entry.prev_hash != expected_prev)
            failure = "hash chain broken";
        else if (entry.scheme_id != kSchemeEd25519)
            failure = "unknown signature scheme";
        else if (!SigningKey::verify(key, entry.payload(), entry.signature))
            failure = "signature verification failed";
        if (failure) {
            result.ok = false;
            result.first_bad_index = i;
            result.first_bad_offset = raw[i].offset;
            result.reason = failure;
            return result;
        }
        expected_prev = sha256(raw[i].bytes);
    }
    return result;
}

} // namespace tvws
