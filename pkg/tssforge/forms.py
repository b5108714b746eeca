"""
Forms validating the parameters of each command before any computation
starts. Group specifications are only parsed here; groups are built when the
command executes.
"""
from django import forms

from tssforge.constructions import GroupSpec
from tssforge.exceptions import GroupSpecError


class GroupSpecField(forms.CharField):
    def to_python(self, value):
        value = super(GroupSpecField, self).to_python(value)
        if not value:
            return None
        try:
            return GroupSpec(value)
        except GroupSpecError as e:
            raise forms.ValidationError(str(e))


class GroupSpecListField(forms.Field):
    def to_python(self, value):
        if not value:
            return []
        specs = []
        for text in value:
            try:
                specs.append(GroupSpec(text))
            except GroupSpecError as e:
                raise forms.ValidationError(str(e))
        return specs


class CommandForm(forms.Form):
    """
    Options shared by every command.
    """
    cap = forms.IntegerField(required=False, min_value=1)
    budget = forms.IntegerField(required=False, min_value=1)
    exhaustive_assoc = forms.BooleanField(required=False)
    permutation_action = forms.BooleanField(required=False)

    def get_command_kwargs(self):
        return self.cleaned_data


class BoundsForm(CommandForm):
    theorem = forms.TypedChoiceField(choices=(('1', '1'), ('2', '2')), coerce=int)
    n = forms.IntegerField(min_value=5)


class TssVerifyForm(CommandForm):
    group = GroupSpecField()
    elements = forms.CharField()


class TssSearchForm(CommandForm):
    group = GroupSpecField()
    max_size = forms.IntegerField(required=False, min_value=1)


class SharpForm(CommandForm):
    n = forms.IntegerField(min_value=3)


class HomsForm(CommandForm):
    n = forms.IntegerField(min_value=2)
    target = GroupSpecField()
    non_cyclic_only = forms.BooleanField(required=False)
    up_to_conjugacy = forms.BooleanField(required=False)
    transitive_only = forms.BooleanField(required=False)
    surjective_only = forms.BooleanField(required=False)


class AuditForm(CommandForm):
    n = forms.IntegerField(min_value=5)
    catalog = forms.CharField(required=False)
    group = GroupSpecListField(required=False)
    builtin = forms.BooleanField(required=False)
    complete_catalog = forms.BooleanField(required=False)

    def clean(self):
        cleaned_data = super(AuditForm, self).clean()
        if not (cleaned_data.get('catalog') or cleaned_data.get('group')
                or cleaned_data.get('builtin')):
            raise forms.ValidationError('an audit needs --catalog, --group or --builtin')
        return cleaned_data


class ValidateGroupForm(CommandForm):
    group = GroupSpecField()
