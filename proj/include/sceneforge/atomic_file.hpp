// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace sceneforge {

// Write-to-temp then rename, so readers never observe partial files.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace sceneforge
