# Configuration file for the Sphinx documentation builder.

# -- Project information
import os
import sys

sys.path.insert(0, os.path.abspath(".."))  # Source code dir relative to this file

from boxlab import __version__  # noqa: E402

project = "boxlab"
copyright = "2026, boxlab developers"
author = "boxlab developers"

version = __version__
release = __version__

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.intersphinx",
    "sphinx.ext.napoleon",  # numpy style Parameters / Returns sections
    "sphinx.ext.viewcode",
    "sphinx_autodoc_typehints",
]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
    "networkx": ("https://networkx.org/documentation/stable/", None),
}

autosummary_generate = True
autoclass_content = "both"
autodoc_inherit_docstrings = True
add_module_names = False
html_show_sourcelink = False
napoleon_google_docstring = False

templates_path = ["_templates"]
# tests are not part of the API reference
exclude_patterns = ["_build", "_autosummary/boxlab.tests*"]

# -- Options for HTML output -------------------------------------------------

on_rtd = os.environ.get("READTHEDOCS", None) == "True"
if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme

    html_theme = "sphinx_rtd_theme"
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
