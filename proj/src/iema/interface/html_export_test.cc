/*
 * Copyright 2026 The IEMA Authors.
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

#include "iema/interface/html_export.h"

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "iema/interface/script.h"
#include "iema/session/bundle.h"
#include "iema/testing/players.h"

namespace iema::interface {
namespace {

using ::testing::HasSubstr;
using ::testing::Not;

std::string DialogueBundle() {
  auto steps =
      ParseScript(testing::DialogueScript().dump(), *testing::Players());
  EXPECT_TRUE(steps.ok()) << steps.status();
  auto session = RunScript(testing::Players(), testing::PlayersModel("gbm"),
                           {.seed = 7}, *steps);
  EXPECT_TRUE(session.ok()) << session.status();
  return session::SerializeBundle(session::ExportBundle(*session));
}

TEST(HtmlExportTest, EmbeddedBundleRoundTrips) {
  const std::string bundle = DialogueBundle();
  auto html = ExportHtml(bundle);
  ASSERT_TRUE(html.ok()) << html.status();
  EXPECT_THAT(*html,
              HasSubstr(R"(<script type="application/json" id="iema-data">)"));
  auto extracted = ExtractBundle(*html);
  ASSERT_TRUE(extracted.ok()) << extracted.status();
  EXPECT_EQ(*extracted, bundle);
  EXPECT_TRUE(session::ValidateBundle(nlohmann::json::parse(*extracted)).ok());
}

TEST(HtmlExportTest, ExportIsDeterministic) {
  const std::string bundle = DialogueBundle();
  auto first = ExportHtml(bundle);
  auto second = ExportHtml(DialogueBundle());
  ASSERT_TRUE(first.ok() && second.ok());
  EXPECT_EQ(*first, *second);
}

TEST(HtmlExportTest, EmptySessionCarriesOpeners) {
  auto session = session::Session::Create(testing::Players(),
                                          testing::PlayersModel("linear"), {});
  ASSERT_TRUE(session.ok()) << session.status();
  auto html =
      ExportHtml(session::SerializeBundle(session::ExportBundle(*session)));
  ASSERT_TRUE(html.ok()) << html.status();
  auto extracted = ExtractBundle(*html);
  ASSERT_TRUE(extracted.ok());
  const auto bundle = nlohmann::json::parse(*extracted);
  EXPECT_TRUE(bundle["history"].empty());
  EXPECT_EQ(bundle["next_steps"]["terminals"].size(), 8u);
}

TEST(HtmlExportTest, CustomUiScriptIsInlinedAndEscaped) {
  auto html = ExportHtml(DialogueBundle(), "render('</script><b>');");
  ASSERT_TRUE(html.ok()) << html.status();
  EXPECT_THAT(*html, HasSubstr("render('<\\/script><b>');"));
  EXPECT_THAT(*html, Not(HasSubstr(BuiltinViewerScript())));
  auto builtin = ExportHtml(DialogueBundle());
  ASSERT_TRUE(builtin.ok());
  EXPECT_THAT(*builtin, HasSubstr(BuiltinViewerScript()));
}

TEST(HtmlExportTest, RejectsInvalidBundles) {
  EXPECT_FALSE(ExportHtml("not json").ok());
  EXPECT_FALSE(ExportHtml(R"({"version": 1})").ok());
  EXPECT_FALSE(ExtractBundle("<html><body></body></html>").ok());
}

}  // namespace
}  // namespace iema::interface
