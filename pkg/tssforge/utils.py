import inspect

from django.utils.safestring import mark_safe


def docstring_summary(value):
    """
    Returns the first paragraph of the docstring of ``value`` joined into one
    line, or ``None`` when it has no docstring.
    """
    docstring = getattr(value, '__doc__', None)
    if not docstring:
        return None
    docstring = inspect.cleandoc(docstring)
    return ' '.join(docstring.split('\n\n', 1)[0].split())


def mark_strings_safe(context):
    """
    Returns a copy of the context with every string marked safe.

    Text reports are plain text, so cycle notation such as ``(1 2)`` and
    arrows must not be HTML-escaped by the template engine.
    """
    return dict((key, mark_safe(value) if isinstance(value, str) else value)
                for key, value in context.items())


def distinct(values, key=None):
    """
    Returns the distinct values in order of first occurrence.
    """
    seen = set()
    result = []
    for value in values:
        marker = value if key is None else key(value)
        if marker not in seen:
            seen.add(marker)
            result.append(value)
    return result
