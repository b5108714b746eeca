from django import template


register = template.Library()


@register.filter
def elements(value, separator='; '):
    """
    Joins a list of elements in the element grammar, so the output can be
    pasted back into ``--elements``.
    """
    if not value:
        return '-'
    return separator.join(str(item) for item in value)


@register.filter
def underline(value, character='='):
    return character * len(str(value))


@register.filter
def flag(value):
    if value is None:
        return 'n/a'
    return 'yes' if value else 'no'
