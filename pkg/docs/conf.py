# Configuration file for the Sphinx documentation builder.

import os
import sys
from datetime import datetime, timezone

from numpydoc import numpydoc, docscrape  # noqa

curdir = os.path.dirname(__file__)
sys.path.insert(0, os.path.abspath(os.path.join(curdir, '..')))

import lfnforge  # noqa: E402

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.mathjax',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode',
    'numpydoc',
]

autosummary_generate = True
autodoc_default_options = {'inherited-members': False}
numpydoc_show_class_members = False

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'lfnforge'
td = datetime.now(tz=timezone.utc)
copyright = f'2026-{td.year}, lfnforge Developers.'
author = 'lfnforge developers'

version = lfnforge.__version__
release = version

exclude_patterns = ['_build', '_templates', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'

intersphinx_mapping = {
    'python': ('https://docs.python.org/{.major}'.format(sys.version_info), None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
    'sklearn': ('https://scikit-learn.org/stable', None),
    'mpmath': ('https://mpmath.org/doc/current/', None),
}

# -- Options for HTML output ----------------------------------------------

html_theme = 'pydata_sphinx_theme'
html_theme_options = {
    'navigation_depth': 4,
    'show_toc_level': 1,
    'footer_items': ['copyright'],
}
html_static_path = []
htmlhelp_basename = 'lfnforge-doc'
