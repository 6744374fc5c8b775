# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

"""
Read the docs config.
"""

import os
import sys

# -- Project information -----------------------------------------------------

project = "graph-state-tools"
author = "graph-state-tools developers"

# The full version, including alpha/beta/rc tags
release = "0.1.0"

os.environ["PYTHON"] = sys.executable

# -- General configuration ---------------------------------------------------

master_doc = "index"

extensions = [
    "sphinx.ext.autodoc",  # Create the API documentation automatically
    "sphinx.ext.viewcode",  # Create the "[source]" button in the API to show the source code.
    "sphinx.ext.autosummary",  # Create API doc summary texts from the docstrings.
    "sphinx_design",  # To render nice blocks
    "sphinx_autodoc_typehints",  # Include type hints in the API documentation.
    "sphinxcontrib.programoutput",
    "sphinx.ext.intersphinx",
    "numpydoc",
    "myst_nb",  # MySt for rendering Jupyter notebook in documentation
]

myst_enable_extensions = ["colon_fence", "dollarmath"]

intersphinx_mapping = {
    "python": ("https://docs.python.org/", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "xarray": ("https://docs.xarray.dev/en/stable/", None),
    "pandas": ("https://pandas.pydata.org/docs/", None),
    "joblib": ("https://joblib.readthedocs.io/en/stable/", None),
}

autosummary_generate = True
numpydoc_show_class_members = False

# Add any paths that contain templates here, relative to this directory.
templates_path = ["_templates"]

# List of patterns, relative to source directory, that match files and
# directories to ignore when looking for source files.
exclude_patterns = ["_templates"]

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_book_theme"
html_title = "graph-state-tools"

html_theme_options = {
    "path_to_docs": "doc/source",
    "use_sidenotes": True,
}

html_context = {
    "default_mode": "auto"
}
