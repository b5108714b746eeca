import sys, os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from tssforge import __version__

import django
from django.conf import settings

if not settings.configured:
    settings.configure(INSTALLED_APPS=('tssforge',))
    django.setup()


extensions = ['sphinx.ext.autodoc', 'sphinx.ext.intersphinx']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build']

project = u'tssforge'
copyright = u'2026, the tssforge authors'
version = release = '.'.join(map(str, __version__))

html_static_path = ['_static']
htmlhelp_basename = 'tssforge'

intersphinx_mapping = {
    'python': ('https://docs.python.org/%s.%s' % sys.version_info[:2], None),
    'django': ('https://docs.djangoproject.com/en/%s.%s/' % django.VERSION[:2],
        'https://docs.djangoproject.com/en/%s.%s/_objects/' % django.VERSION[:2]),
}

autodoc_member_order = 'bysource'
autodoc_default_options = {'members': True}
