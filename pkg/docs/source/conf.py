# -*- coding: utf-8 -*-
#
# nilzeta documentation build configuration file.

import sys
import os

# the package lives two levels up
sys.path.insert(0, os.path.abspath('../..'))

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
]

# numba is optional and never needed to import the modules
autodoc_mock_imports = ['numba']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'nilzeta'
copyright = u'2026, the nilzeta developers'
author = u'the nilzeta developers'

version = '0.1'
release = version

language = 'en'
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'nilzetadoc'

latex_elements = {
}

latex_documents = [
  (master_doc, 'nilzeta.tex', u'nilzeta Documentation',
   author, 'manual'),
]

man_pages = [
    (master_doc, 'nilzeta', u'nilzeta Documentation',
     [author], 1)
]

texinfo_documents = [
  (master_doc, 'nilzeta', u'nilzeta Documentation',
   author, 'nilzeta', 'Exact local normal zeta functions of F_{2,d}.',
   'Miscellaneous'),
]
