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

#include <stdexcept>
#include <string>

namespace tvws {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidWidth : Error { using Error::Error; };
struct EmptyBand : Error { using Error::Error; };
struct ChannelOutOfRange : Error { using Error::Error; };
struct NonPositiveInput : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct AugmentOutOfRange : Error { using Error::Error; };
struct BufferTooShort : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct InvalidPfa : Error { using Error::Error; };
struct ProtocolError : Error { using Error::Error; };
struct BindFailure : Error { using Error::Error; };
struct SigningKeyUnavailable : Error { using Error::Error; };
struct ScriptInvalid : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace tvws
