#pragma once

// Generated by tests/oracles/generate.py (mpmath, 40 digits).

#include <array>

namespace oracle {

struct BesselRow { double xi, j1, ratio, ratio_deriv; };
inline constexpr std::array<BesselRow, 205> kBessel{{
    {0.0, 0.0, 0.5, 0.0},
    {0.25, 0.12402597732272692273, 0.49610390929090769093, -0.031087557143850707716},
    {0.5, 0.24226845767487388638, 0.48453691534974777277, -0.061208046917365282615},
    {0.75, 0.34924360217486219252, 0.46565813623314959003, -0.089431996399534075342},
    {1.0, 0.44005058574493351596, 0.44005058574493351596, -0.11490348493190048047},
    {1.25, 0.51062326031988046707, 0.40849860825590437366, -0.13687290499241878589},
    {1.5, 0.55793650791009964199, 0.37195767194006642799, -0.15472511476280981816},
    {1.75, 0.58015619763899249731, 0.33151782722228142704, -0.16800178529109262298},
    {2.0, 0.5767248077568733872, 0.2883624038784366936, -0.17641701430781885958},
    {2.25, 0.5483783566469601622, 0.24372371406531562765, -0.17986558970750987499},
    {2.5, 0.49709410246427403801, 0.1988376409857096152, -0.17842362337584689069},
    {2.75, 0.42597230295790234124, 0.15489901925741903318, -0.17234162411758244563},
    {3.0, 0.33905895852593645893, 0.11301965284197881964, -0.16203042019529702564},
    {3.25, 0.24111968801520388824, 0.074190673235447350227, -0.14804066112046344918},
    {3.5, 0.13737752736232718572, 0.039250722103522053062, -0.13103690976980213814},
    {3.75, 0.033229349129679728504, 0.0088611597679145942677, -0.11176756652586760628},
    {4.0, -0.066043328023549136143, -0.016510832005887284036, -0.091032036463018201054},
    {4.25, -0.15555319297834270605, -0.036600751289021813188, -0.069646651228671006153},
    {4.5, -0.23106043192337063401, -0.051346762649637918668, -0.04841088526352124156},
    {4.75, -0.28918679864711041073, -0.060881431294128507522, -0.028075361032235136162},
    {5.0, -0.32757913759146522204, -0.065515827518293044408, -0.0093130232555504431065},
    {5.25, -0.34501397857943768277, -0.065716948300845272909, 0.0073053156118805091377},
    {5.5, -0.34143821542904335018, -0.062079675532553336396, 0.02133008757223408654},
    {5.75, -0.31794452391933269146, -0.055294699812057859384, 0.032446040285394225163},
    {6.0, -0.27668385812756560817, -0.046113976354594268029, 0.040478868326697577953},
    {6.25, -0.22072087753923726997, -0.035315340406277963194, 0.045395317422274664593},
    {6.5, -0.15384130140997183711, -0.023667892524611051863, 0.047296983173973613096},
    {6.75, -0.080322785255277215546, -0.011899671889670698599, 0.046408316083540437032},
    {7.0, -0.0046828234823458326991, -0.00066897478319226181416, 0.043059602869420017183},
    {7.25, 0.068581700653131744531, 0.0094595449176733440732, 0.037665908187094111636},
    {7.5, 0.13524842757970550518, 0.018033123677294067358, 0.03070312140343870162},
    {7.75, 0.19160259218911780557, 0.024722915121176491041, 0.022682353403581124542},
    {8.0, 0.23463634685391462438, 0.029329543356739328048, 0.014123965053009406249},
    {8.25, 0.26220355199274381872, 0.031782248726393190148, 0.0055324817034321206354},
    {8.5, 0.27312196367405374427, 0.032131995726359264031, -0.0026264399540922381777},
    {8.75, 0.26721789148628161277, 0.030539187598432184317, -0.0099459692904564948246},
    {9.0, 0.24531178657332527232, 0.027256865174813919147, -0.01609414905916710807},
    {9.25, 0.209146650470121115, 0.022610448699472552973, -0.02082542272866825638},
    {9.5, 0.16126443075752985095, 0.016975203237634721153, -0.023987279385546505022},
    {9.75, 0.10483850125849751018, 0.010752666795743334378, -0.025521911087521533541},
    {10.0, 0.04347274616886143667, 0.004347274616886143667, -0.025463031368512062253},
    {10.25, -0.019020455696868566988, -0.0018556542143286406818, -0.023928241107726066049},
    {10.5, -0.078850014227331488153, -0.0075095251645077607765, -0.021107537536507771873},
    {10.75, -0.13247010254299020316, -0.012322800236557228201, -0.017248733895478726769},
    {11.0, -0.17678529895672150114, -0.016071390814247409194, -0.012640683525336479087},
    {11.25, -0.20932517962472061516, -0.018606682633308499125, -0.0075952779061291539276},
    {11.5, -0.22837862066532347461, -0.01985901049263682388, -0.002429211054468833102},
    {11.75, -0.23308058827396428969, -0.019836645810550152314, 0.0025535267280021849462},
    {12.0, -0.22344710449062761237, -0.018620592040885634364, 0.0070775412398837337793},
    {12.25, -0.20035719875585499474, -0.016355689694355509775, 0.010909550195855193487},
    {12.5, -0.16548380461475971846, -0.013238704369180777477, 0.013868917075102612581},
    {12.75, -0.12117855082319186611, -0.0095042000645640679298, 0.0158347809230810512},
    {13.0, -0.070318052121778371157, -0.005409080932444490089, 0.01674955878784283009},
    {13.25, -0.016121474234366946171, -0.0012167150365559959375, 0.016618800603332897481},
    {13.5, 0.038049292086001423163, 0.0028184660804445498639, 0.015507572868111978928},
    {13.75, 0.088894646741791248456, 0.0064650652175848180696, 0.013533727132205735261},
    {14.0, 0.13337515469879325311, 0.0095267967641995180789, 0.01085856304157568735},
    {14.25, 0.16889055348599345109, 0.011851968665683750954, 0.0076755161172144721857},
    {14.5, 0.19342946359604696006, 0.01333996300662392828, 0.0041975822066985080239},
    {14.75, 0.205681271486186293, 0.013944492982114324949, 0.00064423053937089461151},
    {15.0, 0.20510403861352276115, 0.013673602574234850743, -0.002771445198350031648},
    {15.25, 0.19194500945467446201, 0.012586557997027833575, -0.0058546317812264851018},
    {15.5, 0.16721318035174714327, 0.01078794711946755763, -0.0084391319444506634673},
    {15.75, 0.13260627465763901037, 0.0084194460100088260549, -0.010395617085697067372},
    {16.0, 0.090397175661304186239, 0.0056498234788315116399, -0.011637420058830763007},
    {16.25, 0.043287237340532081401, 0.0026638299901865896247, -0.012123643115655930716},
    {16.5, -0.0057642137356312269888, -0.00034934628700795315084, -0.011859515173505765057},
    {16.75, -0.053723561918893512558, -0.0032073768309787171676, -0.010894089611272253222},
    {17.0, -0.097668492757780650236, -0.0057452054563400382492, -0.0093155200728531453774},
    {17.25, -0.13496424275615052637, -0.0078240140728203203693, -0.0072442794989823300654},
    {17.5, -0.16341996942575490589, -0.0093382839671859946224, -0.0048247903025322247388},
    {17.75, -0.18141603687685870696, -0.010220621795879363772, -0.002216006332817825596},
    {18.0, -0.18799488548806959401, -0.010444160304892755223, 0.00041847304932229997557},
    {18.25, -0.18291044742494146921, -0.010022490269859806532, 0.0029201709871757596277},
    {18.5, -0.16663364001001603118, -0.0090072237843251908748, 0.0051448253508759503115},
    {18.75, -0.14031415810184220352, -0.0074834217654315841876, 0.0069703059298909520115},
    {19.0, -0.1057014311424092668, -0.0055632332180215403578, 0.0083029424260891728933},
    {19.25, -0.065030051218585299949, -0.0033781844788875480493, 0.009081954897925013346},
    {19.5, -0.02087707014809752225, -0.0010706189819537190898, 0.0092817982053374528794},
    {19.75, 0.023999816388423013476, 0.0012151805766290133405, 0.0089123587138291561791},
    {20.0, 0.066833124175850045579, 0.0033416562087925022789, 0.0080170675961499075085},
    {20.25, 0.10501496864953360309, 0.0051859243777547458318, 0.0066691133391687964582},
    {20.5, 0.13625468819339573661, 0.0066465701557754017857, 0.004966039997176778475},
    {20.75, 0.15871523621974001356, 0.0076489270467344584849, 0.003023101815963447798},
    {21.0, 0.17112027276390010384, 0.0081485844173285763735, 0.00096580486505740906197},
    {21.25, 0.17282575846403226921, 0.0081329768688956361979, -0.0010779004607082549139},
    {21.5, 0.16385208254581223387, 0.0076210270951540573894, -0.0029853068796216823875},
    {21.75, 0.14487520288655353275, 0.006660928868347288862, -0.0046460704473530024323},
    {22.0, 0.11717778964385170066, 0.0053262631656296227572, -0.0059683637289148375305},
    {22.25, 0.082563790952296099574, 0.0037107321776312853741, -0.0068837311927892515527},
    {22.5, 0.043242033190712200074, 0.0019218681418094311144, -0.0073504023693956257347},
    {22.75, 0.0016862982245984212021, 0.000074122998883447085806, -0.0073549162369736490489},
    {23.0, -0.039519321883701511332, -0.001718231386247891797, -0.0069120138496082938565},
    {23.25, -0.077840183964207690608, -0.0033479649016863522842, -0.0060628592227558204683},
    {23.5, -0.11094614338176332141, -0.0047211124843303541024, -0.0048717449613452652926},
    {23.75, -0.13685245756717366956, -0.0057622087396704702974, -0.0034215236167737193318},
    {24.0, -0.15403806518312122128, -0.0064182527159633842201, -0.0018080736972888541073},
    {24.25, -0.16153422911560166783, -0.0066612053243547079516, -0.00013415712411555847455},
    {24.5, -0.15897841181932807879, -0.0064889147681358399506, 0.0014969495212383502862},
    {24.75, -0.14663042728184799016, -0.005924461708357494552, 0.0029876652585342496535},
    {25.0, -0.12535024958028990465, -0.0050140099832115961861, 0.0042517921296952523418},
    {25.25, -0.096539209719481386079, -0.003823335038395302419, 0.0052193566777477107909},
    {25.5, -0.062048536491484101721, -0.002433275940842513793, 0.0058403415462169760518},
    {25.75, -0.024061158861528617693, -0.00093441393637004340557, 0.0060871163866225559431},
    {26.0, 0.01504573058691581115, 0.00057868194565060812115, 0.0059554596781199966677},
    {26.25, 0.052848742589771662555, 0.0020132854319913014307, 0.0054641496748700599856},
    {26.5, 0.087027807537331489, 0.0032840682089559052453, 0.0046531882903952302045},
    {26.75, 0.1155079546874122813, 0.0043180543808378422918, 0.0035808012822704719512},
    {27.0, 0.13658472451850766685, 0.0050586935006854691427, 0.0023194270742413388629},
    {27.25, 0.1490256646939978939, 0.0054688317318898309687, 0.00095096114131031568132},
    {27.5, 0.15214189320465694153, 0.0055324324801693433283, -0.00043843977692385788436},
    {27.75, 0.14582560060696887386, 0.0052549765984493287879, -0.0017636710544052852553},
    {28.0, 0.13055148833509379348, 0.0046625531548247783385, -0.0029457898878088989493},
    {28.25, 0.10734236978786103486, 0.0037997299039950808799, -0.0039166204666991111745},
    {28.5, 0.077701357904523370752, 0.0027263634352464340615, -0.0046225915175773446245},
    {28.75, 0.04351509297985111958, 0.0015135684514730824202, -0.0050275956438756587549},
    {29.0, 0.0069342045592652512482, 0.00023911050204362935338, -0.0051147236443817692816},
    {29.25, -0.029761452849121967396, -0.0010174855674913493127, -0.0048867979449404649369},
    {29.5, -0.064304378099192396782, -0.0021798094270912676875, -0.0043657030320073111397},
    {29.75, -0.094579054378810085032, -0.0031791278782793305893, -0.0035905828771824006779},
    {30.0, -0.11875106261662293652, -0.0039583687538874312173, -0.00261504153577551163},
    {30.25, -0.13537782272587401144, -0.00447529992482228137, -0.0015035395847925030541},
    {30.5, -0.14349430015097094111, -0.0047047311524908505284, -0.00032722269550099839375},
    {30.75, -0.14266860687756980746, -0.0046396294919534896734, 0.00084055289255572019718},
    {31.0, -0.13302431666631419837, -0.0042911069892359418829, 0.0019287212671940042763},
    {31.25, -0.11522838548383533189, -0.0036873083354827306206, 0.0028727622660372504953},
    {31.5, -0.09044569145442246721, -0.0028712917922038878479, 0.0036184606443136634096},
    {31.75, -0.060263253423340689704, -0.0018980552259319902269, 0.0041249538211416236283},
    {32.0, -0.026589028475905284643, -0.0008309071398720401451, 0.0043669007508218751265},
    {32.25, 0.0084682850347800696504, 0.00026258248169860681086, 0.0043356611549370678645},
    {32.5, 0.042730892620379614201, 0.001314796696011680437, 0.0040394364251202510514},
    {32.75, 0.074086803054576148749, 0.0022621924596817144656, 0.003502387129728265038},
    {33.0, 0.1006196491151174953, 0.0030490802762156816756, 0.0027628033843356999832},
    {33.25, 0.12072547111649002507, 0.0036308412365861661675, 0.0018704597490382721725},
    {33.5, 0.13320936573052397535, 0.0039763989770305664284, 0.00088333259911317242972},
    {33.75, 0.13735619392921685502, 0.0040698131534582771857, -0.00013610750334360149228},
    {34.0, 0.13297118107691543113, 0.0039109170904975126802, -0.0011247948589055199245},
    {34.25, 0.12038812602695007377, 0.003514981781808761278, -0.0020229189838187363962},
    {34.5, 0.10044494700742565996, 0.0029114477393456713032, -0.0027774942096172523533},
    {34.75, 0.074428305579343272223, 0.0021418217432904538769, -0.0033454383460952379561},
    {35.0, 0.04399094217962563997, 0.0012568840622750182848, -0.0036959843108817887536},
    {35.25, 0.011047012179623511068, 0.00031339041644322017213, -0.003812292627536971236},
    {35.5, -0.022347970208817342649, -0.00062952028757231951124, -0.003692183755385503457},
    {35.75, -0.054125070276495414588, -0.001513987979762109499, -0.0033479641214103625931},
    {36.0, -0.082329809486448929398, -0.0022869391524013591499, -0.0028053750934412595531},
    {36.25, -0.10524209463947487067, -0.002903230196951030915, -0.0021017466196549068765},
    {36.5, -0.12148085704997702479, -0.0033282426589034801311, -0.0012834837561591183752},
    {36.75, -0.13008705118470281221, -0.0035397837057061989716, -0.0004030521271663899407},
    {37.0, -0.13058003873375645503, -0.0035291902360474717575, 0.00048434459991877400692},
    {37.25, -0.12298405791995135411, -0.0033015854475154725936, 0.0013241873101653229574},
    {37.5, -0.10782334401927695922, -0.0028752891738473855793, 0.0020659542255545866795},
    {37.75, -0.086086409409782107475, -0.0022804346863518439066, 0.0026661247638970980272},
    {38.0, -0.059161889887760126069, -0.001556891839151582265, 0.0030906979668277179237},
    {38.25, -0.02875010185151489808, -0.00075163664971280779295, 0.0033170818504288030121},
    {38.5, 0.0032440737659676194931, 0.000084261656258899207612, 0.0033352509615135498058},
    {38.75, 0.034830249179444824481, 0.0008988451401147051479, 0.0031481157968046953681},
    {39.0, 0.06405610368868934664, 0.0016424641971458806831, 0.0027710966553993682543},
    {39.25, 0.089127816923424271398, 0.0022707724056923381248, 0.0022309429414808782821},
    {39.5, 0.1085199464011415798, 0.0027473404152187741721, 0.0015638839918814256033},
    {39.75, 0.12106803206375689565, 0.0030457366556919973749, 0.00081323650737724070093},
    {40.0, 0.12603831803758499921, 0.0031509579509396249801, 0.000026624367058950989831},
    {40.25, 0.12317042859367754514, 0.0030601348718926098171, -0.00074701270629324789055},
    {40.5, 0.11269052994059431271, 0.0027824822207554151285, -0.0014604355573771302997},
    {40.75, 0.0952943460985700136, 0.0023385115607011046282, -0.0020709628759629855853},
    {41.0, 0.072101261604979386451, 0.0017585673562190094256, -0.0025429981423638491852},
    {41.25, 0.044582521064205307857, 0.0010807883894352801905, -0.0028500782163592853776},
    {41.5, 0.014468116511452121138, 0.00034862931352896677441, -0.0029763272973701133654},
    {41.75, -0.016361758123121640697, -0.00039189839815860217237, -0.0029172382377839521609},
    {42.0, -0.045993888221887140055, -0.0010950925767115985727, -0.0026797455133371338963},
    {42.25, -0.072600565019781039807, -0.0017183565685155275694, -0.0022815979059160212876},
    {42.5, -0.094552126810488046154, -0.0022247559249526599095, -0.0017500814552018650329},
    {42.75, -0.11051659648687051191, -0.0025851835435525265944, -0.0011201819278528900308},
    {43.0, -0.11954033404934334445, -0.0027800077685893801036, -0.00043230865225504016745},
    {43.25, -0.12110483025702619756, -0.0028001116822433802904, 0.00027027380291145565138},
    {43.5, -0.1151562691098231548, -0.0026472705542488081564, 0.0009441443283614362281},
    {43.75, -0.10210618803102285543, -0.0023338557264233795527, 0.0015483873777669385858},
    {44.0, -0.082803359376029170975, -0.0018818945312733902494, 0.0020470565544280309003},
    {44.25, -0.058478793945904462154, -0.0013215546654441686362, 0.0024112925863353145174},
    {44.5, -0.030667416962248564779, -0.00068915543735390033211, 0.0026209721303694123289},
    {44.75, -0.001111388342462127297, -0.000024835493686304520603, 0.002665794516818844613},
    {45.0, 0.028348854376424527534, 0.00062997454169832283408, 0.0025457493686635483982},
    {45.25, 0.055889027063297052145, 0.0012351166201833602684, 0.0022709467430924017403},
    {45.5, 0.079813799653066775898, 0.0017541494429245445252, 0.0018608306432800660703},
    {45.75, 0.098661001639385967705, 0.0021565246259975074908, 0.0013428340431614715346},
    {46.0, 0.11129083655510082259, 0.0024193660120674091867, 0.00075056671740008752262},
    {46.25, 0.11695467057100962961, 0.0025287496339677757754, 0.00012165422103604641597},
    {46.5, 0.11533925191457613443, 0.0024804140196683039662, -0.00050463423196942973856},
    {46.75, 0.10658375847238070604, 0.0022798664913878225891, -0.0010898205458702502209},
    {47.0, 0.091268764240007885609, 0.0019418886008512316087, -0.0015985652575214607238},
    {47.25, 0.070377955847710128247, 0.0014894805470414841957, -0.0020007855653189082099},
    {47.5, 0.045235110474968015676, 0.00095231811526248454055, -0.0022734179029351264539},
    {47.75, 0.017420362617125267126, 0.00036482434800262339532, -0.0024017227753004812778},
    {48.0, -0.011328953419624693742, -0.00023601986290884778629, -0.0023800591374662407666},
    {48.25, -0.039226672218462440831, -0.00081298802525310758199, -0.0022120891438621392558},
    {48.5, -0.064548626595552969406, -0.0013308995174340818434, -0.0019104095198439052758},
    {48.75, -0.085739069511120813432, -0.0017587501438178628396, -0.0014956409205715867176},
    {49.0, -0.10150612803431055647, -0.0020715536333532766627, -0.00099503930725646860695},
    {49.25, -0.11090044035325123943, -0.0022517855909289591763, -0.00044072163185052925218},
    {49.5, -0.11337219628326539141, -0.0022903473996619270992, 0.00013237968002790165289},
    {49.75, -0.10880316127655353028, -0.0021869982166141413122, 0.00068870408606191125088},
    {50.0, -0.097511828125175137661, -0.0019502365625035027532, 0.0011942560158851764102},
    {0.001, 0.00049999993750000260417, 0.49999993750000260417, -0.00012499998958333365885},
    {0.01, 0.0049999375002604161241, 0.49999375002604161241, -0.0012499895833658853624},
    {7.99, 0.23320071425350174304, 0.029186572497309354574, 0.014470196261991730084},
    {8.01, 0.23604710363083402796, 0.029469051639305122092, 0.013777686121339908865},
}};

inline constexpr double kCq_1 = 2.510390036737906167;
inline constexpr double kCq_1_5 = 2.5982234858249351769;
inline constexpr double kCq_2 = 2.6103754424447375318;
inline constexpr double kCq_3 = 2.5392849025002843432;
inline constexpr double kRhs_1 = 3.2111171466346011677;
inline constexpr double kRhs_1_5 = 2.6159513536906512027;
inline constexpr double kRhs_2 = 2.2138054958290508402;
inline constexpr double kSobolevS3 = 5.4779040895313318736;
inline constexpr double kCofF_n1_0_3_ninf_7_q1 = 0.73070769566666840168;
inline constexpr double kCofF_n1_2_np_0_5_q1_5 = 0.87437990086229858092;

inline constexpr double kUnitBumpMass = 0.44108888727660440046;
inline constexpr double kPolyL1_k4 = 0.21549301101046905466;
inline constexpr double kPolyL1_k6 = 0.081606820737692423066;
inline constexpr double kPolyKinetic_k6 = 0.088397751235985132385;

// ball terms of the homogeneous solution for uniform data at t = 0.2
inline constexpr double kBallU1_t0_2 = 0.000066577841241631124197;
inline constexpr double kBallU2_t0_2 = -0.0013306692049387845406;
inline constexpr double kBallU1_series_t0_2 = 0.000066577841269841269841;
inline constexpr double kBallU2_series_t0_2 = -0.0013306692063492063492;

} // namespace oracle
