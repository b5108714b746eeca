class TssForgeError(Exception):
    """
    Base class for all errors raised by this package.
    """


class InvalidArgument(TssForgeError, ValueError):
    pass


class DegreeMismatch(TssForgeError, ValueError):
    pass


class NotInGroup(TssForgeError):
    def __init__(self, element, group):
        super(NotInGroup, self).__init__(
            '%s is not an element of %s' % (element, group))
        self.element = element
        self.group = group


class UnsupportedBacking(TssForgeError):
    pass


class CapExceeded(TssForgeError):
    """
    Raised when a closure or construction would exceed the configured order
    cap. ``count`` is the number of elements reached before giving up.
    """
    def __init__(self, cap, count, message=None):
        super(CapExceeded, self).__init__(
            message or 'group order exceeds the cap of %d '
                       '(%d elements reached)' % (cap, count))
        self.cap = cap
        self.count = count


class GroupFormatError(TssForgeError):
    def __init__(self, message, path=None, line=None):
        location = ''
        if path is not None:
            location = '%s' % path
            if line is not None:
                location += ':%d' % line
            location += ': '
        super(GroupFormatError, self).__init__(location + message)
        self.path = path
        self.line = line


class AssociativityError(GroupFormatError):
    def __init__(self, triple, path=None):
        a, b, c = triple
        super(AssociativityError, self).__init__(
            'table is not associative: (%d*%d)*%d != %d*(%d*%d)'
            % (a, b, c, a, b, c), path=path)
        self.triple = triple


class GroupSpecError(TssForgeError):
    def __init__(self, message, text, position):
        super(GroupSpecError, self).__init__(
            '%s at position %d in %r' % (message, position, text))
        self.text = text
        self.position = position


class CertificateError(TssForgeError):
    """
    An outcome that the mathematics rules out for correct inputs: a failed
    certificate check, or a homomorphism violating a proven equivalence. The
    only possible cause is an implementation bug, so this is never swallowed
    by the package. ``dump`` holds the data needed to reproduce it.
    """
    def __init__(self, message, dump=None):
        super(CertificateError, self).__init__(message)
        self.dump = dump or {}
