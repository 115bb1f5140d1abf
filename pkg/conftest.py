"""Configure Django before pytest collects the SimpleTestCase-based suite."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'sarima_project.settings')
django.setup()
