# fairselect documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

import django

sys.path.insert(0, os.path.abspath("."))
sys.path.insert(0, os.path.abspath(".."))
os.environ["DJANGO_SETTINGS_MODULE"] = "tests.settings"
django.setup()

import fairselect  # noqa: E402

# -- General configuration ------------------------------------------------

extensions = ["sphinx.ext.autodoc"]

templates_path = ["_templates"]

source_suffix = ".rst"

master_doc = "index"

project = "fairselect"
copyright = "2024, the fairselect developers"
author = "the fairselect developers"

version = fairselect.__version__
release = fairselect.__version__

language = None

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

pygments_style = "default"

todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = "karma_sphinx_theme"

html_static_path = ["_static"]

htmlhelp_basename = "fairselectdoc"

# -- Options for manual page output ---------------------------------------

man_pages = [(master_doc, "fairselect", "fairselect Documentation", [author], 1)]
