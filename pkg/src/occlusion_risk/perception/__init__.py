"""Range, field-of-view and line-of-sight visibility."""
