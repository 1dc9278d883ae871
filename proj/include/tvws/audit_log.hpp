// SPDX-License-Identifier: Apache-2.0
//
// tvwsctl: TV white space control-plane toolkit
// Copyright (C) 2026 the tvwsctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvws/spectrum.hpp"

namespace tvws {

enum class GrantStatus : std::uint8_t { Valid = 0, Expired = 1, None = 2, WaiverActive = 3 };
enum class DecisionBasis : std::uint8_t { ValidGrant = 0, WaiverSensing = 1, Denied = 2 };

std::string to_string(GrantStatus s);
std::string to_string(DecisionBasis b);

/// One transmission decision, as logged. Field set is a superset of the
/// regulatory minimum (timestamp, GPS, channel, EIRP, grant status, sensing
/// confidence): it adds the decision basis, a grant/sensing conflict flag and
/// the digital twin's advisory occupancy prior.
struct AuditRecord {
    double timestamp_s = 0.0;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    ChannelId channel;
    std::optional<double> eirp_dbm;
    GrantStatus grant_status = GrantStatus::None;
    std::optional<double> sensing_confidence;
    DecisionBasis basis = DecisionBasis::Denied;
    bool sensing_conflict = false;
    std::optional<double> prior_occupancy;
};

using Digest = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

constexpr std::uint8_t kSchemeEd25519 = 1;
constexpr Digest kGenesisDigest{}; // all-zero digest

/// Canonical little-endian serialization of a record; the byte string that is
/// chained and signed. Layout:
///   f64 timestamp, f64 lat, f64 lon, u32 channel,
///   u8 has_eirp [f64 eirp], u8 grant_status,
///   u8 has_confidence [f64 confidence], u8 basis, u8 conflict,
///   u8 has_prior [f64 prior]
std::vector<std::uint8_t> canonical_bytes(const AuditRecord& record);

struct SignedAuditEntry {
    AuditRecord record;
    Digest prev_hash = kGenesisDigest;
    std::uint8_t scheme_id = kSchemeEd25519;
    Signature signature{};

    /// record bytes || prev_hash || scheme_id; the signing payload.
    std::vector<std::uint8_t> payload() const;
    /// payload || signature; what gets hashed into the successor.
    std::vector<std::uint8_t> entry_bytes() const;
};

/// Ed25519 node identity. A default-constructed key is unloaded and cannot
/// sign; AuditLog refuses it with SigningKeyUnavailable.
class SigningKey {
  public:
    SigningKey() = default;

    static SigningKey generate();
    static SigningKey from_seed(std::uint64_t seed);

    bool can_sign() const { return valid_; }
    const std::array<std::uint8_t, 32>& public_key() const { return public_key_; }
    Signature sign(const std::vector<std::uint8_t>& payload) const;
    static bool verify(const std::array<std::uint8_t, 32>& public_key,
                       const std::vector<std::uint8_t>& payload, const Signature& sig);

  private:
    std::array<std::uint8_t, 32> public_key_{};
    std::array<std::uint8_t, 64> secret_key_{};
    bool valid_ = false;
};

Digest sha256(const std::vector<std::uint8_t>& bytes);

struct VerifyResult {
    bool ok = true;
    std::size_t entries = 0;
    std::size_t first_bad_index = 0;
    std::uint64_t first_bad_offset = 0; ///< byte offset of the failing entry
    std::string reason;
};

/// Append-only, hash-chained, signed decision log persisted as
///   magic "TVWSAUD1", u32 version (1), 32-byte public key,
///   then per entry: u32 length, entry bytes.
class AuditLog {
  public:
    /// Opens (creating if needed) a log at path. Appends re-derive the chain
    /// head from existing entries. Throws SigningKeyUnavailable when the key
    /// cannot sign.
    AuditLog(std::string path, SigningKey key);

    SignedAuditEntry append(const AuditRecord& record);

    std::size_t size() const { return entries_; }
    const std::string& path() const { return path_; }

    static std::vector<SignedAuditEntry> read_all(const std::string& path);
    /// Full chain + signature verification against the public key embedded in
    /// the file header (or an override).
    static VerifyResult verify_file(
        const std::string& path,
        std::optional<std::array<std::uint8_t, 32>> public_key = std::nullopt);

  private:
    std::string path_;
    SigningKey key_;
    Digest head_ = kGenesisDigest;
    std::size_t entries_ = 0;
};

} // namespace tvws
