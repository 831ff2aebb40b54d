/*
 * Copyright 2026 The pdrec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PDREC_HASHING_H_
#define PDREC_HASHING_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace pdrec {

// Lower-case hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

// First `length` hex digits of the SHA-256 digest.
std::string ContentId(std::string_view data, std::size_t length = 16);

}  // namespace pdrec

#endif  // PDREC_HASHING_H_
